fn main() {
    let crate_dir = std::env::var("CARGO_MANIFEST_DIR").unwrap();
    // Regenerate the committed header when possible; keep the stale one
    // rather than failing the build if cbindgen chokes.
    match cbindgen::generate(&crate_dir) {
        Ok(bindings) => {
            bindings.write_to_file(format!("{crate_dir}/include/hesstrace.h"));
        }
        Err(e) => println!("cargo:warning=cbindgen failed: {e}"),
    }
    println!("cargo:rerun-if-changed=src/lib.rs");
    println!("cargo:rerun-if-changed=cbindgen.toml");
}
