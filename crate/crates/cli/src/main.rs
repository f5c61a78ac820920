//! Command-line front end: validate algebras, inspect their convex
//! subalgebras and spectra, decide semilinearity and Hamiltonicity, check
//! identities, take quotients, enumerate models, and export diagrams.
//!
//! Exit codes: 0 = success / property holds, 1 = property fails (a
//! counterexample is printed), 2 = input or usage error.

use std::process::ExitCode;

use clap::{Parser, Subcommand};
use num_rational::Rational64;

use reslat::convexity::{all_convex_subalgebras, subset_elems, subset_of};
use reslat::enumeration::{expansions, SearchSpec};
use reslat::format::{parse_algebra, parse_lattice, write_algebra};
use reslat::laws::catalog_law;
use reslat::normality::{
    congruences_oracle, hamiltonian_degree, is_semilinear, quotient, SemiRoute,
};
use reslat::report::{build_report, export_conv_dot, export_dot, report_json};
use reslat::spectrum::{annotate, double_polar_boolean, minimal_primes, primes};
use reslat::structures::{builtin, bn_verify};
use reslat::term::{check_law, parse_law, Law, LawVerdict, MAX_VAR_CAP};
use reslat::FiniteResiduatedLattice;

#[derive(Parser)]
#[command(name = "reslat", about = "finite residuated-lattice toolkit")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Validate an algebra and print its flags.
    Check {
        input: String,
        /// Emit the full structured report as JSON.
        #[arg(long)]
        json: bool,
    },
    /// Print the lattice of convex subalgebras.
    Conv { input: String },
    /// Print primes, minimal primes, polars, and the double-polar Boolean algebra.
    Spectrum { input: String },
    /// Print the normal convex subalgebras and the congruence count.
    Normal { input: String },
    /// Decide semilinearity.
    Semilinear {
        input: String,
        #[arg(long, default_value = "all")]
        route: String,
    },
    /// Print the Hamiltonian degree, or "none".
    Hamiltonian { input: String },
    /// Check an identity or quasi-identity.
    Identity {
        input: String,
        #[arg(long)]
        law: Option<String>,
        #[arg(long)]
        expr: Option<String>,
    },
    /// Quotient by the convex normal subalgebra generated by elements.
    Quotient {
        input: String,
        /// Comma-separated element labels.
        #[arg(long)]
        by: String,
    },
    /// Enumerate residuated-lattice expansions.
    Enumerate {
        /// Lattice file (`lattice`/`elements`/`order`/`end`).
        #[arg(long)]
        lattice: Option<String>,
        /// Enumerate over all lattices up to this size instead.
        #[arg(long)]
        max_size: Option<usize>,
        #[arg(long)]
        integral: bool,
        /// Catalog law names each model must satisfy (repeatable).
        #[arg(long = "law")]
        laws: Vec<String>,
    },
    /// Verify the parametric chain on a rational grid.
    Bn {
        #[arg(long)]
        n: u64,
        /// Comma-separated rationals, e.g. "-2,-1,0,1/2,3".
        #[arg(long, allow_hyphen_values = true)]
        grid: String,
    },
    /// Export a DOT diagram of the cover relation.
    Export {
        input: String,
        #[arg(long)]
        dot: bool,
        /// Export the convex-subalgebra lattice instead of the algebra.
        #[arg(long)]
        conv: bool,
    },
}

fn load(input: &str) -> Result<(String, FiniteResiduatedLattice), String> {
    if std::path::Path::new(input).exists() {
        let text = std::fs::read_to_string(input).map_err(|e| format!("{input}: {e}"))?;
        let parsed = parse_algebra(&text).map_err(|e| format!("{input}: {e}"))?;
        Ok((parsed.name, parsed.algebra))
    } else {
        let alg = builtin(input).map_err(|e| e.to_string())?;
        Ok((input.to_string(), alg))
    }
}

fn names_of(alg: &FiniteResiduatedLattice, s: reslat::Subset) -> String {
    let labels: Vec<&str> = subset_elems(s).into_iter().map(|x| alg.name_of(x)).collect();
    format!("{{{}}}", labels.join(","))
}

fn run() -> Result<i32, String> {
    let cli = Cli::parse();
    match cli.cmd {
        Cmd::Check { input, json } => {
            let (name, alg) = load(&input)?;
            if json {
                let rep = build_report(&name, &alg).map_err(|e| e.to_string())?;
                println!("{}", report_json(&rep));
            } else {
                let f = alg.flags();
                println!("algebra {name}: size {}", alg.size());
                println!(
                    "e_cyclic={} integral={} commutative={} chain={} bounded={}",
                    f.e_cyclic, f.integral, f.commutative, f.chain, f.bounded
                );
            }
            Ok(0)
        }
        Cmd::Conv { input } => {
            let (name, alg) = load(&input)?;
            let lat = all_convex_subalgebras(&alg).map_err(|e| e.to_string())?;
            println!("algebra {name}: {} convex subalgebras", lat.len());
            for (i, node) in lat.nodes.iter().enumerate() {
                println!("  C{i} = {}", names_of(&alg, node.members));
            }
            Ok(0)
        }
        Cmd::Spectrum { input } => {
            let (name, alg) = load(&input)?;
            let lat = all_convex_subalgebras(&alg).map_err(|e| e.to_string())?;
            let ann = annotate(&alg, &lat).map_err(|e| e.to_string())?;
            let pr = primes(&lat);
            let minp = minimal_primes(&alg, &lat);
            let boolean = double_polar_boolean(&alg, &lat).map_err(|e| e.to_string())?;
            println!("algebra {name}");
            let show = |label: &str, nodes: &[usize]| {
                let items: Vec<String> =
                    nodes.iter().map(|&i| names_of(&alg, lat.nodes[i].members)).collect();
                println!("{label}: {}", items.join(" "));
            };
            show("primes", &pr);
            show("minimal primes", &minp);
            let polars: Vec<usize> =
                (0..lat.len()).filter(|&i| ann.is_polar[i]).collect();
            show("polars", &polars);
            show("double-polar boolean algebra", &boolean.nodes);
            Ok(0)
        }
        Cmd::Normal { input } => {
            let (name, alg) = load(&input)?;
            let lat = all_convex_subalgebras(&alg).map_err(|e| e.to_string())?;
            let normal =
                reslat::normality::all_normal(&alg, &lat).map_err(|e| e.to_string())?;
            println!("algebra {name}: {} normal convex subalgebras", normal.len());
            for &i in &normal {
                println!("  {}", names_of(&alg, lat.nodes[i].members));
            }
            let cong = congruences_oracle(&alg).map_err(|e| e.to_string())?;
            println!("congruences: {}", cong.len());
            Ok(0)
        }
        Cmd::Semilinear { input, route } => {
            let (name, alg) = load(&input)?;
            let route = match route.as_str() {
                "identity" => SemiRoute::Identity,
                "spectral" => SemiRoute::Spectral,
                "bruteforce" => SemiRoute::BruteForce,
                "all" => SemiRoute::All,
                other => return Err(format!("unknown route `{other}`")),
            };
            let verdict = is_semilinear(&alg, route).map_err(|e| e.to_string())?;
            if verdict.semilinear {
                println!("algebra {name}: semilinear (route {:?})", verdict.route);
                if let Some(kernels) = verdict.decomposition {
                    let items: Vec<String> =
                        kernels.iter().map(|&k| names_of(&alg, k)).collect();
                    println!("chain-quotient kernels: {}", items.join(" "));
                }
                Ok(0)
            } else {
                println!("algebra {name}: not semilinear (route {:?})", verdict.route);
                if let Some(cx) = verdict.counterexample {
                    let labels: Vec<&str> = cx.iter().map(|&x| alg.name_of(x)).collect();
                    println!("counterexample: ({})", labels.join(","));
                }
                // the non-normal minimal primes witness the failure
                let lat = all_convex_subalgebras(&alg).map_err(|e| e.to_string())?;
                let normal =
                    reslat::normality::all_normal(&alg, &lat).map_err(|e| e.to_string())?;
                let bad: Vec<String> = minimal_primes(&alg, &lat)
                    .into_iter()
                    .filter(|i| !normal.contains(i))
                    .map(|i| names_of(&alg, lat.nodes[i].members))
                    .collect();
                if !bad.is_empty() {
                    println!("non-normal minimal primes: {}", bad.join(" "));
                }
                Ok(1)
            }
        }
        Cmd::Hamiltonian { input } => {
            let (name, alg) = load(&input)?;
            match hamiltonian_degree(&alg).map_err(|e| e.to_string())? {
                Some((m, n)) => {
                    println!("algebra {name}: ({m},{n})");
                    Ok(0)
                }
                None => {
                    println!("algebra {name}: none");
                    Ok(1)
                }
            }
        }
        Cmd::Identity { input, law, expr } => {
            let (name, alg) = load(&input)?;
            let law: Law = match (law, expr) {
                (Some(n), None) => catalog_law(&n).map_err(|e| e.to_string())?,
                (None, Some(src)) => parse_law(&src).map_err(|e| e.to_string())?,
                _ => return Err("pass exactly one of --law or --expr".into()),
            };
            println!("algebra {name}: {}", law.display());
            match check_law(&alg, &law, Some(MAX_VAR_CAP)).map_err(|e| e.to_string())? {
                LawVerdict::Holds => {
                    println!("holds");
                    Ok(0)
                }
                LawVerdict::Counterexample(cx) => {
                    let parts: Vec<String> = cx
                        .iter()
                        .enumerate()
                        .map(|(i, &x)| {
                            let var = law
                                .vars
                                .get(i)
                                .cloned()
                                .unwrap_or_else(|| format!("x{i}"));
                            format!("{var}={}", alg.name_of(x))
                        })
                        .collect();
                    println!("fails at {}", parts.join(" "));
                    Ok(1)
                }
            }
        }
        Cmd::Quotient { input, by } => {
            let (name, alg) = load(&input)?;
            let mut gens = Vec::new();
            for label in by.split(',').map(str::trim).filter(|s| !s.is_empty()) {
                let x = alg
                    .names()
                    .iter()
                    .position(|s| s == label)
                    .ok_or_else(|| format!("unknown element label `{label}`"))?;
                gens.push(x);
            }
            let h = reslat::normality::normal_closure(
                &alg,
                subset_of(&gens),
                reslat::normality::ConjFamily::Gamma,
            )
            .map_err(|e| e.to_string())?;
            let (q, _) = quotient(&alg, h.members).map_err(|e| e.to_string())?;
            print!("{}", write_algebra(&format!("{name}_quotient"), &q));
            Ok(0)
        }
        Cmd::Enumerate { lattice, max_size, integral, laws } => {
            let mut bases: Vec<(String, usize, Vec<bool>)> = Vec::new();
            match (lattice, max_size) {
                (Some(path), None) => {
                    let text =
                        std::fs::read_to_string(&path).map_err(|e| format!("{path}: {e}"))?;
                    let (name, labels, leq) =
                        parse_lattice(&text).map_err(|e| format!("{path}: {e}"))?;
                    bases.push((name, labels.len(), leq));
                }
                (None, Some(k)) => {
                    for (i, (n, leq)) in reslat::enumeration::all_lattices(k)
                        .map_err(|e| e.to_string())?
                        .into_iter()
                        .enumerate()
                    {
                        bases.push((format!("lattice{i}"), n, leq));
                    }
                }
                _ => return Err("pass exactly one of --lattice or --max-size".into()),
            }
            let mut total = 0usize;
            for (name, n, leq) in bases {
                let mut spec = SearchSpec::new(leq, n);
                spec.require_integral = integral;
                spec.laws = laws.clone();
                for (i, alg) in expansions(&spec, false)
                    .map_err(|e| e.to_string())?
                    .iter()
                    .enumerate()
                {
                    print!("{}", write_algebra(&format!("{name}_{i}"), alg));
                    total += 1;
                }
            }
            println!("{total} models");
            Ok(0)
        }
        Cmd::Bn { n, grid } => {
            let mut points = Vec::new();
            for tok in grid.split(',').map(str::trim).filter(|s| !s.is_empty()) {
                let r = match tok.split_once('/') {
                    Some((p, q)) => {
                        let p: i64 = p.trim().parse().map_err(|_| format!("bad rational `{tok}`"))?;
                        let q: i64 = q.trim().parse().map_err(|_| format!("bad rational `{tok}`"))?;
                        if q == 0 {
                            return Err(format!("bad rational `{tok}`"));
                        }
                        Rational64::new(p, q)
                    }
                    None => Rational64::from_integer(
                        tok.parse().map_err(|_| format!("bad rational `{tok}`"))?,
                    ),
                };
                points.push(r);
            }
            if n < 2 {
                return Err("--n must be at least 2".into());
            }
            let rep = bn_verify(n, &points).map_err(|e| e.to_string())?;
            println!(
                "n={} witness={} grading={} residuation={}",
                rep.n, rep.witness_ok, rep.grading_ok, rep.residuation_ok
            );
            Ok(if rep.witness_ok && rep.grading_ok && rep.residuation_ok { 0 } else { 1 })
        }
        Cmd::Export { input, dot, conv } => {
            if !dot {
                return Err("only --dot export is supported".into());
            }
            let (name, alg) = load(&input)?;
            if conv {
                print!("{}", export_conv_dot(&name, &alg).map_err(|e| e.to_string())?);
            } else {
                print!("{}", export_dot(&name, &alg));
            }
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    match run() {
        Ok(code) => ExitCode::from(code as u8),
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
