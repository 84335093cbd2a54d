//! Command-line front end. Every command emits a machine-readable table
//! (CSV or JSON) on stdout (or --out) and a one-line human summary on
//! stderr. Exit codes: 0 all checks pass, 1 verification failure, 2 usage
//! error, 3 internal arithmetic error.

use clap::{Parser, Subcommand, ValueEnum};
use num_integer::Roots;
use num_rational::BigRational;
use num_traits::Zero;

use crate::classnum::{class_number_h, hurwitz_h, hurwitz_h_star, prime_power, rat, schoof_count};
use crate::combin::{
    self, cohen_identity_sum, gamma_half, gen_binomial, kappa, kappa_closed, lemma_binomsum_lhs,
    lemma_binomsum_rhs, rat_pow, SqrtPiScalar,
};
use crate::config::{OutputFormat, RunConfig};
use crate::error::{Error, Result};
use crate::field::make_field;
use crate::hessian::{census, CurveCensus};
use crate::moments::{self, MomentMethod, MomentReport};
use crate::report::{self, CheckRow};

#[derive(Parser)]
#[command(name = "hesstrace", version, about = "Hessian-curve trace identities at desk scale")]
pub struct Cli {
    /// Output format (overrides config).
    #[arg(long, global = true)]
    pub format: Option<FormatArg>,
    /// Write the table to a file instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<std::path::PathBuf>,
    /// Worker thread count (overrides config).
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
pub enum FormatArg {
    Csv,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
pub enum MethodArg {
    Direct,
    Classnum,
    Both,
}

#[derive(Subcommand)]
pub enum Command {
    /// Check q·₂F₁(3/λ) = −a(λ) for every nonsingular λ ≠ 0.
    Bridge {
        #[arg(long)]
        p: u64,
        #[arg(long, default_value_t = 1)]
        r: u32,
    },
    /// Power moments of the ₂F₁ lifts (3 | q−1) or traces, m = 1..=m-max.
    Moments {
        #[arg(long)]
        p: u64,
        #[arg(long, default_value_t = 1)]
        r: u32,
        #[arg(long, default_value_t = 6)]
        m_max: u32,
        #[arg(long, value_enum, default_value_t = MethodArg::Both)]
        method: MethodArg,
    },
    /// Histogram and KS distance of the normalized values against the
    /// semicircle law.
    Distribution {
        #[arg(long)]
        p: u64,
        #[arg(long, default_value_t = 1)]
        r: u32,
        #[arg(long)]
        bins: u32,
    },
    /// Class numbers h, H, H* for discriminants up to d-max.
    Classnum {
        #[arg(long)]
        d_max: i64,
    },
    /// Isomorphism census of y² = x³+ax+b over F_q, checked against the
    /// class-number counts.
    Census {
        #[arg(long)]
        q: u64,
    },
    /// Exact combinatorial identity suite.
    Identities {
        #[arg(long, default_value_t = 30)]
        nu_max: u32,
        #[arg(long, default_value_t = 50)]
        n_max: u32,
    },
    /// Scaled-moment convergence rows across a list of primes.
    Sweep {
        #[arg(long, value_delimiter = ',', required = true)]
        p_list: Vec<u64>,
        #[arg(long, default_value_t = 6)]
        m_max: u32,
    },
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::NonPrime(_)
        | Error::SmallCharacteristic(_)
        | Error::UnsupportedDegree(_)
        | Error::CapExceeded { .. }
        | Error::NoCubicCharacter(_)
        | Error::BadRange(_)
        | Error::BadDiscriminant(_)
        | Error::OracleScaleExceeded(_)
        | Error::MissingR => 2,
        _ => 3,
    }
}

pub fn run(cli: Cli) -> i32 {
    let mut cfg = match RunConfig::load() {
        Ok(cfg) => cfg,
        Err(e) => {
            eprintln!("error: {e}");
            return 2;
        }
    };
    if let Some(f) = cli.format {
        cfg.format = match f {
            FormatArg::Csv => OutputFormat::Csv,
            FormatArg::Json => OutputFormat::Json,
        };
    }
    if let Some(path) = cli.out {
        cfg.out = Some(path);
    }
    if let Some(t) = cli.threads {
        cfg.threads = t;
    }
    if let Err(e) = cfg.validate() {
        eprintln!("error: {e}");
        return 2;
    }
    rayon::ThreadPoolBuilder::new().num_threads(cfg.threads).build_global().ok();

    match dispatch(&cfg, cli.command) {
        Ok((text, pass)) => {
            if let Err(e) = write_output(&cfg, &text) {
                eprintln!("error: {e}");
                return exit_code(&e);
            }
            if pass {
                0
            } else {
                1
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}

fn write_output(cfg: &RunConfig, text: &str) -> Result<()> {
    match &cfg.out {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| Error::BadRange(format!("writing {}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn render(cfg: &RunConfig, csv: String, json: serde_json::Value) -> String {
    match cfg.format {
        OutputFormat::Csv => csv,
        OutputFormat::Json => {
            let mut s = serde_json::to_string_pretty(&json).expect("report is valid JSON");
            s.push('\n');
            s
        }
    }
}

fn dispatch(cfg: &RunConfig, command: Command) -> Result<(String, bool)> {
    match command {
        Command::Bridge { p, r } => {
            let rep = moments::bridge_check(p, r)?;
            let pass = rep.mismatches == 0;
            eprintln!(
                "bridge q={}: {} values checked, {} mismatches: {}",
                rep.q,
                rep.rows.len(),
                rep.mismatches,
                if pass { "PASS" } else { "FAIL" }
            );
            Ok((render(cfg, report::bridge_csv(cfg, &rep), report::bridge_json(cfg, &rep)), pass))
        }
        Command::Moments { p, r, m_max, method } => {
            let method = match method {
                MethodArg::Direct => MomentMethod::Direct,
                MethodArg::Classnum => MomentMethod::Classnum,
                MethodArg::Both => MomentMethod::Both,
            };
            let rows = moments::moment_reports(p, r, m_max, method, None)?;
            let pass = moment_identity_holds(&rows);
            if method == MomentMethod::Both {
                eprintln!(
                    "moments q={}: {} rows, identity {}",
                    rows.first().map_or(0, |row| row.q),
                    rows.len(),
                    if pass { "PASS" } else { "FAIL" }
                );
            }
            Ok((render(cfg, report::moments_csv(cfg, &rows), report::moments_json(cfg, &rows)), pass))
        }
        Command::Distribution { p, r, bins } => {
            let rep = moments::distribution(p, r, bins)?;
            let pass = rep.ks <= cfg.ks;
            eprintln!(
                "distribution q={}: ks={:.4} (tolerance {}): {}",
                rep.q,
                rep.ks,
                cfg.ks,
                if pass { "PASS" } else { "FAIL" }
            );
            Ok((
                render(cfg, report::distribution_csv(cfg, &rep), report::distribution_json(cfg, &rep)),
                pass,
            ))
        }
        Command::Classnum { d_max } => {
            let rows = classnum_rows(d_max)?;
            Ok((render(cfg, report::classnum_csv(cfg, &rows), report::classnum_json(cfg, &rows)), true))
        }
        Command::Census { q } => {
            let (p, r) = prime_power(q)
                .ok_or_else(|| Error::BadRange(format!("{q} is not a prime power")))?;
            let ft = make_field(p, r)?;
            let cen = census(&ft)?;
            let checks = census_checks(q, &cen)?;
            let pass = checks.iter().all(|c| c.pass);
            eprintln!(
                "census q={q}: {} classes, {} checks: {}",
                cen.classes.len(),
                checks.len(),
                if pass { "PASS" } else { "FAIL" }
            );
            Ok((
                render(cfg, report::census_csv(cfg, &cen), report::census_json(cfg, &cen, &checks)),
                pass,
            ))
        }
        Command::Identities { nu_max, n_max } => {
            let checks = identity_checks(nu_max, n_max);
            let pass = checks.iter().all(|c| c.pass);
            eprintln!(
                "identities nu<={nu_max} n<={n_max}: {} suites: {}",
                checks.len(),
                if pass { "PASS" } else { "FAIL" }
            );
            Ok((render(cfg, report::checks_csv(cfg, &checks), report::identities_json(cfg, &checks)), pass))
        }
        Command::Sweep { p_list, m_max } => {
            let mut rows = Vec::new();
            for p in p_list {
                rows.extend(moments::moment_reports(p, 1, m_max, MomentMethod::Direct, None)?);
            }
            Ok((render(cfg, report::sweep_csv(cfg, &rows), report::sweep_json(cfg, &rows)), true))
        }
    }
}

fn moment_identity_holds(rows: &[MomentReport]) -> bool {
    rows.iter().all(|row| match (&row.direct, &row.classnum_side) {
        (Some(d), Some(c)) => &BigRational::from_integer(d.clone()) == c,
        _ => true,
    })
}

fn classnum_rows(d_max: i64) -> Result<Vec<report::ClassnumRow>> {
    let mut rows = Vec::new();
    for d in 3..=d_max {
        if d % 4 != 0 && d % 4 != 3 {
            continue;
        }
        rows.push(report::ClassnumRow {
            d,
            h: class_number_h(d)?,
            hurwitz: hurwitz_h(d),
            hurwitz_star: hurwitz_h_star(d),
        });
    }
    Ok(rows)
}

/// Compare the census against the class-number counts: for every trace s
/// with p ∤ s, the number of classes is H(4q−s²); where full 3-torsion is
/// possible (3 | q−1 and 9 | q+1−s) the number of classes with
/// E[3] ⊆ E(F_q) is H((4q−s²)/9).
pub fn census_checks(q: u64, cen: &CurveCensus) -> Result<Vec<CheckRow>> {
    let (p, _) = prime_power(q).expect("census already built for q");
    let bound = (4 * q).sqrt() as i64;
    let mut checks = Vec::new();
    for s in -bound..=bound {
        if s.rem_euclid(p as i64) == 0 {
            continue;
        }
        let expect = schoof_count(q, s, 1)?;
        let got = cen.count_matching(s, 1);
        checks.push(CheckRow {
            name: format!("classes q={q} s={s} vs H({})", 4 * q as i64 - s * s),
            pass: rat(got as i64, 1) == expect,
        });
        if (q - 1) % 3 == 0 && (q as i64 + 1 - s).rem_euclid(9) == 0 {
            let expect = schoof_count(q, s, 3)?;
            let got = cen.count_matching(s, 9);
            checks.push(CheckRow {
                name: format!("full-3-torsion q={q} s={s} vs H({})", (4 * q as i64 - s * s) / 9),
                pass: rat(got as i64, 1) == expect,
            });
        }
    }
    Ok(checks)
}

pub fn identity_checks(nu_max: u32, n_max: u32) -> Vec<CheckRow> {
    let three_halves = rat(3, 2);
    let binomsum = (0..=nu_max).all(|nu| {
        (0..=nu).all(|k| {
            BigRational::from_integer(lemma_binomsum_lhs(nu, k).unwrap())
                == lemma_binomsum_rhs(nu, k).unwrap()
        })
    });
    let kappa_ok = (0..=nu_max)
        .all(|nu| kappa(&three_halves, &three_halves, nu).unwrap() == kappa_closed(nu));
    let cohen = (1..=n_max).all(|n| cohen_identity_sum(n).is_zero());
    let mertens = (0..=nu_max.min(20)).all(|nu| {
        (0..=nu).all(|mu| {
            let lhs = gen_binomial(&(rat(nu as i64, 1) + rat(1, 2)), nu - mu)
                * gen_binomial(&(rat(nu as i64, 1) - rat(1, 2)), mu);
            let rhs = rat_pow(&rat(1, 4), nu as i64)
                * BigRational::from_integer(combin::binomial(2 * nu as u64, nu as u64))
                * BigRational::from_integer(combin::binomial(
                    2 * nu as u64 + 1,
                    2 * mu as u64 + 1,
                ));
            lhs == rhs
        })
    });
    let duplication = (1..=40u32).all(|twice_z| {
        let z = rat(twice_z as i64, 2);
        let lhs = gamma_half(&z).unwrap().mul(&gamma_half(&(&z + rat(1, 2))).unwrap());
        let rhs = SqrtPiScalar::sqrt_pi(rat_pow(&rat(2, 1), 1 - twice_z as i64))
            .mul(&gamma_half(&(&z * rat(2, 1))).unwrap());
        lhs == rhs
    });
    vec![
        CheckRow { name: format!("binomial_sum_lemma nu<={nu_max}"), pass: binomsum },
        CheckRow { name: format!("kappa_closed_form nu<={nu_max}"), pass: kappa_ok },
        CheckRow { name: format!("cohen_vanishing n<={n_max}"), pass: cohen },
        CheckRow { name: format!("mertens_binomial nu<={}", nu_max.min(20)), pass: mertens },
        CheckRow { name: "legendre_duplication z<=20".into(), pass: duplication },
    ]
}
