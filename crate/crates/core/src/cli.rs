//! Command-line front end.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use num_rational::Ratio;
use serde_json::{json, Value};

use crate::coxring::{build_presentation, generator_names, sample_points, CoxPresentation};
use crate::error::{Error, Result};
use crate::geometry::{del_pezzo_mori_rays, effective_cone, mori_cone, movable_cone, nef_cone};
use crate::gitfan::{mori_chamber_decomposition_with, ChamberSet, TraversalOptions};
use crate::lattice::Signature;
use crate::scalar::to_i64_vec;
use crate::verify::{run_suite, Suite};
use crate::{Int, RationalCone};

#[derive(Debug, Parser)]
#[command(
    name = "coxfan",
    version,
    about = "Exact cones, Cox rings and Mori chambers of blow-ups of P^1 x P^n"
)]
struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Table, global = true)]
    format: Format,
    /// Write the result to FILE instead of stdout.
    #[arg(long, global = true, value_name = "FILE")]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Table,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Mori cone of curves.
    Mori {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        r: usize,
    },
    /// Nef cone.
    Nef {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        r: usize,
    },
    /// Movable cone (r = n + 1).
    Mov {
        #[arg(long)]
        n: usize,
    },
    /// Effective cone (r = n + 1).
    Eff {
        #[arg(long)]
        n: usize,
    },
    /// Cox ring presentation (r = n + 1).
    Coxring {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Mori chamber decomposition of the effective cone (r = n + 1).
    Mcd {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
    /// Mori cone of a del Pezzo surface of degree 1, 2 or 3.
    Delpezzo {
        #[arg(long)]
        degree: usize,
    },
    /// Run built-in consistency checks.
    Verify {
        #[arg(long, value_enum, default_value_t = Suite::All)]
        suite: Suite,
        #[arg(long, default_value_t = 3)]
        n_max: usize,
    },
}

/// Runs the CLI on `args` (including the program name) and returns the exit code.
pub fn run<A, T>(args: A, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    A: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = write!(out, "{e}");
                return 0;
            }
            let msg = e.kind().as_str().unwrap_or("invalid arguments").to_string();
            let _ = writeln!(err, "ERROR:usage:{msg}");
            let _ = write!(err, "{}", e.render());
            return 2;
        }
    };
    match execute(&cli, err) {
        Ok((text, code)) => match &cli.out {
            Some(path) => match std::fs::write(path, text) {
                Ok(()) => code,
                Err(e) => {
                    let _ = writeln!(err, "ERROR:io:{}: {e}", path.display());
                    1
                }
            },
            None => {
                let _ = out.write_all(text.as_bytes());
                code
            }
        },
        Err(e) => {
            let _ = writeln!(err, "ERROR:{}:{e}", e.kind());
            exit_code(&e)
        }
    }
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Input(_) | Error::Domain(_) | Error::Dimension { .. } => 2,
        Error::UnsupportedSignature { .. } | Error::Unsupported(_) => 3,
        _ => 1,
    }
}

fn execute(cli: &Cli, err: &mut dyn Write) -> Result<(String, i32)> {
    let fmt = cli.format;
    let text = match cli.command {
        Command::Mori { n, r } => {
            let sig = Signature::new(n, r)?;
            cone_output(
                fmt,
                "mori_cone",
                &sig.curve_labels(),
                &mori_cone::<Int>(sig)?,
                meta(n, r, None),
            )?
        }
        Command::Nef { n, r } => {
            let sig = Signature::new(n, r)?;
            cone_output(
                fmt,
                "nef_cone",
                &sig.divisor_labels(),
                &nef_cone::<Int>(sig)?,
                meta(n, r, None),
            )?
        }
        Command::Mov { n } => {
            let sig = Signature::new(n, n + 1)?;
            cone_output(
                fmt,
                "movable_cone",
                &sig.divisor_labels(),
                &movable_cone::<Int>(n)?,
                meta(n, n + 1, None),
            )?
        }
        Command::Eff { n } => {
            let sig = Signature::new(n, n + 1)?;
            cone_output(
                fmt,
                "effective_cone",
                &sig.divisor_labels(),
                &effective_cone::<Int>(n)?,
                meta(n, n + 1, None),
            )?
        }
        Command::Coxring { n, seed } => {
            let pres = build_presentation(n, sample_points::<Int>(n, seed)?)?;
            coxring_output(fmt, &pres, seed)?
        }
        Command::Mcd { n, seed, jobs } => {
            let pres = build_presentation(n, sample_points::<Int>(n, seed)?)?;
            let cs = mori_chamber_decomposition_with(
                &pres,
                TraversalOptions {
                    jobs,
                    ..Default::default()
                },
            )?;
            chambers_output(fmt, &cs, seed)?
        }
        Command::Delpezzo { degree } => delpezzo_output(fmt, degree)?,
        Command::Verify { suite, n_max } => {
            let mut lines = String::new();
            let checks = run_suite(suite, n_max, |c| {
                let _ = writeln!(err, "{} {}", if c.passed { "PASS" } else { "FAIL" }, c.name);
            });
            let failed = checks.iter().filter(|c| !c.passed).count();
            if fmt == Format::Json {
                let list: Vec<Value> = checks
                    .iter()
                    .map(|c| json!({"name": c.name, "passed": c.passed, "detail": c.detail}))
                    .collect();
                lines = render_json(&json!({"object": "verify", "checks": list, "failed": failed}));
            } else {
                for c in &checks {
                    let status = if c.passed { "PASS" } else { "FAIL" };
                    if c.detail.is_empty() {
                        lines.push_str(&format!("{status} {}\n", c.name));
                    } else {
                        lines.push_str(&format!("{status} {} ({})\n", c.name, c.detail));
                    }
                }
                lines.push_str(&format!("{} checks, {failed} failed\n", checks.len()));
            }
            return Ok((lines, if failed == 0 { 0 } else { 1 }));
        }
    };
    Ok((text, 0))
}

fn meta(n: usize, r: usize, seed: Option<u64>) -> Value {
    json!({"n": n, "r": r, "seed": seed.unwrap_or(0)})
}

fn render_json(v: &Value) -> String {
    let mut s = serde_json::to_string(v).expect("json values always serialize");
    s.push('\n');
    s
}

fn int_rows(rows: &[Vec<Int>]) -> Result<Vec<Vec<i64>>> {
    rows.iter()
        .map(|r| {
            to_i64_vec(r).ok_or_else(|| Error::Unsupported("coordinate exceeds 64 bits".into()))
        })
        .collect()
}

fn ratio_string(x: &Ratio<Int>) -> String {
    format!("{}/{}", x.numer(), x.denom())
}

fn format_class(labels: &[String], v: &[i64]) -> String {
    let mut s = String::new();
    for (c, l) in v.iter().zip(labels) {
        if *c == 0 {
            continue;
        }
        let mag = c.unsigned_abs();
        let term = if mag == 1 {
            l.clone()
        } else {
            format!("{mag}{l}")
        };
        if s.is_empty() {
            s = if *c < 0 { format!("-{term}") } else { term };
        } else {
            s.push_str(if *c < 0 { " - " } else { " + " });
            s.push_str(&term);
        }
    }
    if s.is_empty() {
        "0".into()
    } else {
        s
    }
}

fn table_header(object: &str, labels: &[String], meta: &Value) -> String {
    let mut s = format!("object: {object}\n");
    if !meta["n"].is_null() {
        s.push_str(&format!(
            "n: {}  r: {}  seed: {}\n",
            meta["n"], meta["r"], meta["seed"]
        ));
    }
    s.push_str(&format!("lattice: {}\n", labels.join(" ")));
    s
}

fn ray_table(labels: &[String], rays: &[Vec<i64>]) -> String {
    let mut s = format!("rays: {}\n", rays.len());
    for r in rays {
        let coords: Vec<String> = r.iter().map(i64::to_string).collect();
        s.push_str(&format!(
            "  [{}]  {}\n",
            coords.join(", "),
            format_class(labels, r)
        ));
    }
    s
}

fn cone_output(
    fmt: Format,
    object: &str,
    labels: &[String],
    cone: &RationalCone<Int>,
    meta: Value,
) -> Result<String> {
    let rays = int_rows(cone.extremal_rays())?;
    Ok(match fmt {
        Format::Json => {
            render_json(&json!({"object": object, "lattice": labels, "rays": rays, "meta": meta}))
        }
        Format::Table => table_header(object, labels, &meta) + &ray_table(labels, &rays),
    })
}

fn coxring_output(fmt: Format, pres: &CoxPresentation<Int>, seed: u64) -> Result<String> {
    let sig = pres.signature();
    let labels = sig.divisor_labels();
    let names = generator_names(pres.n);
    let degrees: Vec<Vec<Int>> = pres
        .generators
        .iter()
        .map(|g| g.degree.coeffs().iter().map(|c| c.to_integer()).collect())
        .collect();
    let degrees = int_rows(&degrees)?;
    let points: Vec<[String; 2]> = pres
        .config
        .points()
        .iter()
        .map(|(a, b)| [ratio_string(a), ratio_string(b)])
        .collect();
    let meta = meta(pres.n, sig.r, Some(seed));
    Ok(match fmt {
        Format::Json => {
            let relations: Vec<Value> = pres
                .relations
                .iter()
                .map(|rel| {
                    let terms: Vec<Value> = rel
                        .terms
                        .iter()
                        .map(|t| {
                            json!({
                                "coefficient": ratio_string(&t.coefficient),
                                "monomial": [names[t.monomial[0]], names[t.monomial[1]]],
                            })
                        })
                        .collect();
                    json!({"points": rel.points, "terms": terms})
                })
                .collect();
            render_json(&json!({
                "object": "cox_ring",
                "lattice": labels,
                "rays": degrees,
                "generators": names,
                "relations": relations,
                "points": points,
                "meta": meta,
            }))
        }
        Format::Table => {
            let mut s = table_header("cox_ring", &labels, &meta);
            s.push_str("points:\n");
            for (i, p) in points.iter().enumerate() {
                s.push_str(&format!("  p_{} = [{} : {}]\n", i + 1, p[0], p[1]));
            }
            s.push_str(&format!("generators: {}\n", names.len()));
            for (name, d) in names.iter().zip(&degrees) {
                s.push_str(&format!("  {name:<8} deg {}\n", format_class(&labels, d)));
            }
            s.push_str(&format!("relations: {}\n", pres.relations.len()));
            for rel in &pres.relations {
                let terms: Vec<String> = rel
                    .terms
                    .iter()
                    .map(|t| {
                        format!(
                            "({}) {}*{}",
                            t.coefficient, names[t.monomial[0]], names[t.monomial[1]]
                        )
                    })
                    .collect();
                s.push_str(&format!("  {}\n", terms.join(" + ")));
            }
            s
        }
    })
}

fn chambers_output(fmt: Format, cs: &ChamberSet<Int>, seed: u64) -> Result<String> {
    let sig = Signature::new(cs.n, cs.n + 1)?;
    let labels = sig.divisor_labels();
    let meta = meta(cs.n, cs.n + 1, Some(seed));
    let support = int_rows(cs.support.extremal_rays())?;
    Ok(match fmt {
        Format::Json => {
            let chambers = cs
                .chambers
                .iter()
                .map(|c| {
                    Ok(json!({
                        "rays": int_rows(c.cone.extremal_rays())?,
                        "interior_point": c.interior_point.iter().map(ratio_string).collect::<Vec<_>>(),
                    }))
                })
                .collect::<Result<Vec<Value>>>()?;
            render_json(&json!({
                "object": "mori_chamber_decomposition",
                "lattice": labels,
                "rays": support,
                "chambers": chambers,
                "meta": meta,
            }))
        }
        Format::Table => {
            let mut s = table_header("mori_chamber_decomposition", &labels, &meta);
            s.push_str(&format!("support {}", ray_table(&labels, &support)));
            for (i, c) in cs.chambers.iter().enumerate() {
                let rays = int_rows(c.cone.extremal_rays())?;
                let rays: Vec<String> = rays
                    .iter()
                    .map(|r| {
                        format!(
                            "[{}]",
                            r.iter().map(i64::to_string).collect::<Vec<_>>().join(",")
                        )
                    })
                    .collect();
                s.push_str(&format!(
                    "chamber {i}: depth {} rays {}\n",
                    c.depth,
                    rays.join(" ")
                ));
            }
            s.push_str(&format!("chambers: {}\n", cs.chambers.len()));
            s
        }
    })
}

fn delpezzo_output(fmt: Format, degree: usize) -> Result<String> {
    let rays = int_rows(&del_pezzo_mori_rays::<Int>(degree)?)?;
    let points = 9 - degree;
    let labels: Vec<String> = std::iter::once("h".to_string())
        .chain((1..=points).map(|i| format!("e_{i}")))
        .collect();
    let meta = json!({"degree": degree, "n": Value::Null, "r": points, "seed": 0});
    Ok(match fmt {
        Format::Json => render_json(
            &json!({"object": "del_pezzo_mori_cone", "lattice": labels, "rays": rays, "meta": meta}),
        ),
        Format::Table => {
            let mut s = format!(
                "object: del_pezzo_mori_cone\ndegree: {degree}  points: {points}\nlattice: {}\n",
                labels.join(" ")
            );
            s.push_str(&ray_table(&labels, &rays));
            s
        }
    })
}
