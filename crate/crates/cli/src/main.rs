//! Command-line front end: fan utilities, toric cohomology, the
//! arrangement Betti pipeline, and the acceptance suite.
//!
//! Exit codes: 0 success, 1 mathematical postcondition failure, 2 input
//! error.

use clap::{Parser, Subcommand};
use std::path::PathBuf;
use std::process::ExitCode;
use torarr_cli::format::{
    arrangement_to_text, fan_to_text, parse_arrangement, parse_fan, parse_int_vector,
};
use torarr_cli::verify;
use torarr_core::algebra::{DegreewiseQuotient, Dga};
use torarr_core::arrangement::{saturate_arrangement, Arrangement};
use torarr_core::fan::Fan;
use torarr_core::morgan::{
    betti, build_compatible_fan, build_model, morgan_ambient, morgan_differential, nested_pairs,
    stratum_dims, theta_ideal, y_cohomology, GenLayout,
};
use torarr_core::oracle::{kunneth, poincare_divisorial, poly_to_betti, punctured_torus_betti};
use torarr_core::toric::{cohomology_ring, torus_dga};

#[derive(Parser)]
#[command(
    name = "torarr",
    about = "Betti numbers of toric arrangement complements via exact rational models",
    version
)]
struct Cli {
    /// Print only machine-readable lines
    #[arg(long, global = true)]
    machine: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Validate and transform fans
    Fan {
        #[command(subcommand)]
        cmd: FanCmd,
    },
    /// Cohomology of smooth complete toric varieties
    Toric {
        #[command(subcommand)]
        cmd: ToricCmd,
    },
    /// The toric arrangement pipeline
    Arr {
        #[command(subcommand)]
        cmd: ArrCmd,
    },
    /// Run the full acceptance suite
    Verify {
        /// Seed for the randomized sample points
        #[arg(long, default_value_t = verify::DEFAULT_SEED)]
        seed: u64,
        /// Run the checks on separate threads
        #[arg(long)]
        parallel: bool,
    },
}

#[derive(Subcommand)]
enum FanCmd {
    /// Report simplicial/complete/smooth/projective status
    Check { file: PathBuf },
    /// Resolve to a smooth fan by stellar subdivisions
    Resolve { file: PathBuf },
    /// Refine so the given characters have constant sign per cone
    Refine {
        file: PathBuf,
        /// A character as whitespace-separated integers; repeatable
        #[arg(long = "char", value_name = "INTS", required = true)]
        chars: Vec<String>,
    },
    /// Print the f- and h-vectors
    Hvector { file: PathBuf },
}

#[derive(Subcommand)]
enum ToricCmd {
    /// Betti numbers of the toric variety of a fan
    Betti { file: PathBuf },
    /// Graded dimensions and cohomology of the torus model on a fan
    Dga {
        file: PathBuf,
        /// Truncation degree (default 2n+2)
        #[arg(long)]
        dmax: Option<usize>,
    },
}

#[derive(Subcommand)]
enum ArrCmd {
    /// Parse and validate an arrangement file
    Validate { file: PathBuf },
    /// Close the arrangement under intersections and print the result
    Saturate { file: PathBuf },
    /// Print the containment poset of the saturation
    Poset { file: PathBuf },
    /// Build and print a compatible fan
    Fan { file: PathBuf },
    /// Betti numbers of the arrangement complement
    Betti {
        file: PathBuf,
        /// Truncation degree override (default 2n+2; the default also
        /// enforces the vanishing checks)
        #[arg(long)]
        dmax: Option<usize>,
    },
    /// List the boundary strata with their cohomology dimensions
    Strata { file: PathBuf },
    /// Print the model presentation: generators, relations, differential
    Presentation { file: PathBuf },
    /// Print the values of whichever independent oracles apply
    Oracle { file: PathBuf },
}

enum Failure {
    Input(String),
    Math(String),
}

type CmdResult = Result<(), Failure>;

fn input<E: std::fmt::Display>(e: E) -> Failure {
    Failure::Input(e.to_string())
}

fn math<E: std::fmt::Display>(e: E) -> Failure {
    Failure::Math(e.to_string())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Math(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn read(path: &PathBuf) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| input(format!("{}: {e}", path.display())))
}

fn load_fan(path: &PathBuf) -> Result<Fan, Failure> {
    parse_fan(&read(path)?).map_err(input)
}

fn load_arrangement(path: &PathBuf) -> Result<Arrangement, Failure> {
    parse_arrangement(&read(path)?).map_err(input)
}

fn join<T: std::fmt::Display>(xs: impl IntoIterator<Item = T>) -> String {
    xs.into_iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

fn run(cli: Cli) -> CmdResult {
    let machine = cli.machine;
    match cli.command {
        Command::Fan { cmd } => run_fan(cmd, machine),
        Command::Toric { cmd } => run_toric(cmd, machine),
        Command::Arr { cmd } => run_arr(cmd, machine),
        Command::Verify { seed, parallel } => run_verify(seed, parallel, machine),
    }
}

fn run_fan(cmd: FanCmd, machine: bool) -> CmdResult {
    match cmd {
        FanCmd::Check { file } => {
            let fan = load_fan(&file)?;
            let r = fan.report();
            if machine {
                println!(
                    "REPORT simplicial={} complete={} smooth={} projective={}",
                    r.simplicial, r.complete, r.smooth, r.projective
                );
            } else {
                println!("dim        {}", fan.dim());
                println!("rays       {}", fan.rays().len());
                println!("max cones  {}", fan.max_cones().len());
                println!("simplicial {}", r.simplicial);
                println!("complete   {}", r.complete);
                println!("smooth     {}", r.smooth);
                println!("projective {}", r.projective);
            }
            if r.all() {
                Ok(())
            } else {
                Err(math("fan is not smooth, complete and projective"))
            }
        }
        FanCmd::Resolve { file } => {
            let fan = load_fan(&file)?;
            let resolved = fan.resolve_smooth();
            resolved
                .validate()
                .map_err(|e| math(format!("resolution postcondition: {e}")))?;
            print!("{}", fan_to_text(&resolved));
            Ok(())
        }
        FanCmd::Refine { file, chars } => {
            let fan = load_fan(&file)?;
            let chars: Vec<Vec<torarr_core::lattice::Int>> = chars
                .iter()
                .map(|s| parse_int_vector(s))
                .collect::<Result<_, _>>()
                .map_err(input)?;
            for c in &chars {
                if c.len() != fan.dim() {
                    return Err(input(format!(
                        "character {c:?} has {} coordinates, fan has dimension {}",
                        c.len(),
                        fan.dim()
                    )));
                }
            }
            let refined = fan.hyperplane_refine(&chars);
            for c in &chars {
                if !refined.equal_sign(c) {
                    return Err(math(format!("character {c:?} still changes sign")));
                }
            }
            print!("{}", fan_to_text(&refined));
            Ok(())
        }
        FanCmd::Hvector { file } => {
            let fan = load_fan(&file)?;
            let h = fan.h_vector();
            if !machine {
                println!("f-vector: {}", join(fan.f_vector()));
                println!("h-vector: {}", join(h.clone()));
            }
            println!("HVECTOR {}", join(h));
            Ok(())
        }
    }
}

fn run_toric(cmd: ToricCmd, machine: bool) -> CmdResult {
    match cmd {
        ToricCmd::Betti { file } => {
            let fan = load_fan(&file)?;
            fan.validate().map_err(math)?;
            let dims = cohomology_ring(&fan, 2 * fan.dim()).dims();
            if !machine {
                println!("Betti numbers of the toric variety:");
            }
            println!("BETTI {}", join(dims));
            Ok(())
        }
        ToricCmd::Dga { file, dmax } => {
            let fan = load_fan(&file)?;
            fan.validate().map_err(math)?;
            let n = fan.dim();
            let dmax = dmax.unwrap_or(2 * n + 2);
            let dga = torus_dga(&fan, dmax);
            if !machine {
                println!("torus model on the fan, truncated at degree {dmax}");
            }
            println!("DIMS {}", join(dga.dims()));
            println!("COHOMOLOGY {}", join(dga.cohomology_dims(dmax.saturating_sub(1))));
            Ok(())
        }
    }
}

fn run_arr(cmd: ArrCmd, machine: bool) -> CmdResult {
    match cmd {
        ArrCmd::Validate { file } => {
            let arr = load_arrangement(&file)?;
            if machine {
                println!("VALID dim={} layers={}", arr.dim(), arr.layers().len());
            } else {
                println!(
                    "arrangement valid: dimension {}, {} layers",
                    arr.dim(),
                    arr.layers().len()
                );
            }
            Ok(())
        }
        ArrCmd::Saturate { file } => {
            let arr = load_arrangement(&file)?;
            let poset = saturate_arrangement(&arr);
            let sat = Arrangement::new(arr.dim(), poset.layers().to_vec())
                .expect("saturation layers are valid and distinct");
            if !machine {
                println!("# saturation: {} layers from {}", poset.len(), arr.layers().len());
            }
            print!("{}", arrangement_to_text(&sat));
            Ok(())
        }
        ArrCmd::Poset { file } => {
            let arr = load_arrangement(&file)?;
            let poset = saturate_arrangement(&arr);
            if !machine {
                for (i, layer) in poset.layers().iter().enumerate() {
                    let basis = layer.gamma().basis();
                    let rows: Vec<String> = (0..basis.rows())
                        .map(|r| format!("[{}]", join(basis.row(r).iter())))
                        .collect();
                    println!("layer {i}: rank {} gamma {}", layer.rank(), rows.join(" "));
                }
            }
            for i in 0..poset.len() {
                for j in 0..poset.len() {
                    if poset.is_strict_sublayer(i, j) {
                        println!("POSET {i}<{j}");
                    }
                }
            }
            Ok(())
        }
        ArrCmd::Fan { file } => {
            let arr = load_arrangement(&file)?;
            let data = saturate_arrangement(&arr).combinatorial_data();
            let cf = build_compatible_fan(&data).map_err(math)?;
            print!("{}", fan_to_text(&cf.fan));
            Ok(())
        }
        ArrCmd::Betti { file, dmax } => {
            let arr = load_arrangement(&file)?;
            let n = arr.dim();
            let data = saturate_arrangement(&arr).combinatorial_data();
            let cf = build_compatible_fan(&data).map_err(math)?;
            let b = match dmax {
                None => {
                    let model = build_model(&cf, &data).map_err(math)?;
                    betti(&model)
                }
                Some(d) => {
                    // experimentation path: custom truncation, no margin
                    // checks, cohomology reported as far as computable
                    let alg = morgan_ambient(&cf, &data);
                    let layout = GenLayout::with_odds(cf.fan.rays().len(), data.len());
                    let q = DegreewiseQuotient::new(alg.clone(), theta_ideal(&cf, &data), d);
                    let dga = Dga::new(q, morgan_differential(&alg, layout)).map_err(math)?;
                    if !machine {
                        println!("# truncation override: degree {d}");
                    }
                    dga.cohomology_dims(d.saturating_sub(1))
                }
            };
            if !machine {
                let terms: Vec<String> = b
                    .iter()
                    .enumerate()
                    .filter(|(_, &c)| c > 0)
                    .map(|(k, &c)| match (k, c) {
                        (0, c) => format!("{c}"),
                        (1, 1) => "q".into(),
                        (1, c) => format!("{c}q"),
                        (k, 1) => format!("q^{k}"),
                        (k, c) => format!("{c}q^{k}"),
                    })
                    .collect();
                println!("Poincare polynomial: {}", terms.join(" + "));
                if dmax.is_none() {
                    println!("degrees 0..{}", 2 * n);
                }
            }
            println!("BETTI {}", join(b));
            Ok(())
        }
        ArrCmd::Strata { file } => {
            let arr = load_arrangement(&file)?;
            let data = saturate_arrangement(&arr).combinatorial_data();
            let cf = build_compatible_fan(&data).map_err(math)?;
            for pair in nested_pairs(&cf, &data) {
                let dims = stratum_dims(&cf, &data, &pair).map_err(math)?;
                println!(
                    "STRATUM flag=[{}] cone=[{}] codim={} dims=[{}]",
                    join(&pair.flag),
                    join(&pair.cone),
                    pair.codim(),
                    join(dims)
                );
            }
            Ok(())
        }
        ArrCmd::Presentation { file } => {
            let arr = load_arrangement(&file)?;
            let data = saturate_arrangement(&arr).combinatorial_data();
            let cf = build_compatible_fan(&data).map_err(math)?;
            let alg = morgan_ambient(&cf, &data);
            let layout = GenLayout::with_odds(cf.fan.rays().len(), data.len());
            println!("generators");
            for (i, g) in alg.gens().iter().enumerate() {
                let origin = if i < layout.nrays {
                    format!("ray [{}]", join(cf.fan.rays()[i].iter()))
                } else if i < layout.nrays + layout.m {
                    format!("layer {}", i - layout.nrays)
                } else if i < 2 * layout.nrays + layout.m {
                    format!("ray [{}]", join(cf.fan.rays()[i - layout.nrays - layout.m].iter()))
                } else {
                    format!("layer {}", i - 2 * layout.nrays - layout.m)
                };
                println!(
                    "  {} degree {} {} ({origin})",
                    g.name,
                    g.degree,
                    if g.odd { "odd" } else { "even" },
                );
            }
            println!("relations");
            for e in theta_ideal(&cf, &data) {
                println!("  {}", alg.format_element(&e));
            }
            println!("differential");
            let d = morgan_differential(&alg, layout);
            for i in 0..alg.ngens() {
                let img = d.image_of_gen(i);
                if !img.is_zero() {
                    println!("  d {} = {}", alg.gens()[i].name, alg.format_element(img));
                }
            }
            println!("compactification cohomology dims: {}", join(y_cohomology(&cf, &data)));
            Ok(())
        }
        ArrCmd::Oracle { file } => {
            let arr = load_arrangement(&file)?;
            let n = arr.dim();
            let mut any = false;
            if arr.layers().is_empty() {
                let poly = kunneth(&vec![
                    vec![
                        torarr_core::lattice::Int::from(1),
                        torarr_core::lattice::Int::from(1)
                    ];
                    n
                ]);
                let b = poly_to_betti(&poly, n);
                if !machine {
                    println!("oracle kunneth (torus factors, external formula):");
                }
                println!("ORACLE kunneth BETTI {}", join(b));
                any = true;
            }
            if arr.layers().iter().all(|l| l.rank() == 1) && !arr.layers().is_empty() {
                let p = poincare_divisorial(&arr).map_err(math)?;
                let b = poly_to_betti(&p, n);
                if !machine {
                    println!("oracle arithmetic-Tutte (divisorial, external formula):");
                }
                println!("ORACLE divisorial-tutte BETTI {}", join(b));
                any = true;
            }
            if arr.layers().len() == 1 && arr.layers()[0].rank() == n {
                let b = punctured_torus_betti(n);
                if !machine {
                    println!("oracle punctured torus (Mayer-Vietoris, external formula):");
                }
                println!("ORACLE puncture BETTI {}", join(b));
                any = true;
            }
            if !any && !machine {
                println!("no external oracle applies to this arrangement");
            }
            Ok(())
        }
    }
}

fn run_verify(seed: u64, parallel: bool, machine: bool) -> CmdResult {
    let results = verify::run_all(seed, parallel);
    let passed = results.iter().filter(|r| r.passed).count();
    if !machine {
        for r in &results {
            println!("{}", r.line());
        }
    }
    if passed == results.len() {
        println!("VERIFY PASS {passed}/{}", results.len());
        Ok(())
    } else {
        println!("VERIFY FAIL {passed}/{}", results.len());
        Err(math(format!("{} acceptance checks failed", results.len() - passed)))
    }
}
