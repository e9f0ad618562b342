use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use skewcyc::census::{first_difference, Census, CensusError};
use skewcyc::enumerate::{brute_force, BRUTE_FORCE_MAX};
use skewcyc::families::{build, family_4p, family_params, FamilyKind};
use skewcyc::invariants::check_census;
use skewcyc::skew::{equivalence_classes, format_images, parse_images, SkewError, SkewMorphism};
use skewcyc::store::{emit_table, Store, TableFormat};

#[derive(Parser)]
#[command(name = "skewcyc", version, about = "Skew morphisms of finite cyclic groups")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Md,
}

#[derive(Subcommand)]
enum Command {
    /// Compute and store the censuses of Z_1 .. Z_max.
    Census {
        #[arg(long)]
        max: usize,
        #[arg(long, env = "SKEWCYC_STORE")]
        store: Option<PathBuf>,
        /// Worker threads (defaults to all cores).
        #[arg(long)]
        jobs: Option<usize>,
    },
    /// Print summary rows for every n in range with a proper skew morphism.
    Table {
        #[arg(long)]
        from: usize,
        #[arg(long)]
        to: usize,
        #[arg(long, env = "SKEWCYC_STORE")]
        store: PathBuf,
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
    },
    /// List the stored skew morphisms of Z_n.
    Show {
        #[arg(long)]
        n: usize,
        #[arg(long, env = "SKEWCYC_STORE")]
        store: PathBuf,
        #[arg(long)]
        proper_only: bool,
    },
    /// Decide whether a permutation of Z_n is a skew morphism.
    Verify {
        #[arg(long)]
        n: usize,
        /// Comma-separated images of 0, 1, .., n-1.
        #[arg(long)]
        perm: String,
    },
    /// Compare the census of Z_n against exhaustive search.
    Oracle {
        #[arg(long)]
        n: usize,
        #[arg(long, env = "SKEWCYC_STORE")]
        store: PathBuf,
    },
    /// Build the closed-form families of Z_4p.
    Families {
        #[arg(long)]
        p: usize,
        #[arg(long)]
        check_against_census: bool,
        #[arg(long, env = "SKEWCYC_STORE")]
        store: Option<PathBuf>,
    },
    /// Run the invariant suite on the censuses of Z_1 .. Z_max.
    Check {
        #[arg(long)]
        max: usize,
        #[arg(long, env = "SKEWCYC_STORE")]
        store: PathBuf,
    },
}

fn open_census(store: Option<PathBuf>) -> Result<Census, CensusError> {
    match store {
        Some(dir) => Census::with_store(dir),
        None => Ok(Census::new()),
    }
}

fn describe(phi: &SkewMorphism, class_id: Option<usize>) -> String {
    let class = class_id.map_or("-".to_string(), |c| c.to_string());
    format!(
        "{}  order={} kernel={} pi={} cp={} auto={} class={}",
        phi,
        phi.order(),
        phi.kernel_order(),
        format_images(phi.pi()),
        phi.is_coset_preserving(),
        phi.is_automorphism(),
        class
    )
}

fn run(cli: Cli) -> Result<ExitCode, Box<dyn std::error::Error>> {
    match cli.command {
        Command::Census { max, store, jobs } => {
            if let Some(j) = jobs {
                rayon::ThreadPoolBuilder::new().num_threads(j).build_global()?;
            }
            let mut census = open_census(store)?;
            for n in 1..=max {
                let c = census.get(n)?.counts();
                eprintln!("n={n}: {} proper, {} automorphisms, {} classes", c.proper, c.automorphisms, c.classes);
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Table { from, to, store, format } => {
            let format = match format {
                Format::Csv => TableFormat::Csv,
                Format::Md => TableFormat::Markdown,
            };
            print!("{}", emit_table(&Store::open(store)?, from, to, format)?);
            Ok(ExitCode::SUCCESS)
        }
        Command::Show { n, store, proper_only } => {
            let record = Store::open(store)?.load(n)?;
            for e in record.entries().iter().filter(|e| !proper_only || e.phi.is_proper()) {
                println!("{}", describe(&e.phi, e.class_id));
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify { n, perm } => {
            let verdict = parse_images(&perm).and_then(|images| SkewMorphism::verify(n, images));
            match verdict {
                Ok(phi) => {
                    println!("skew morphism");
                    println!("{}", describe(&phi, None));
                    Ok(ExitCode::SUCCESS)
                }
                Err(SkewError::NoPowerExponent(a)) => {
                    println!("not a skew morphism");
                    println!("witness: a = {a}, no power of phi equals x -> phi({a} + x) - phi({a})");
                    Ok(ExitCode::from(2))
                }
                Err(e) => {
                    println!("not a skew morphism");
                    println!("reason: {e}");
                    Ok(ExitCode::from(2))
                }
            }
        }
        Command::Oracle { n, store } => {
            if n > BRUTE_FORCE_MAX {
                return Err(format!("oracle is limited to n <= {BRUTE_FORCE_MAX}").into());
            }
            let record = Census::with_store(store)?.get(n)?;
            let expected: Vec<Vec<usize>> = brute_force(n)?.into_iter().map(|phi| phi.into_images()).collect();
            match first_difference(&expected, &record.image_sequences()) {
                None => {
                    println!("Z_{n}: census matches exhaustive search ({} skew morphisms)", expected.len());
                    Ok(ExitCode::SUCCESS)
                }
                Some(diff) => {
                    println!("Z_{n}: census differs from exhaustive search: {diff}");
                    Ok(ExitCode::FAILURE)
                }
            }
        }
        Command::Families { p, check_against_census, store } => {
            let params = family_params(p)?;
            for kind in [FamilyKind::X, FamilyKind::Y, FamilyKind::Z] {
                let members: Vec<SkewMorphism> =
                    params.iter().filter(|f| f.kind == kind).map(build).collect::<Result<_, _>>()?;
                if members.is_empty() {
                    continue;
                }
                let mut orders: Vec<usize> = members.iter().map(|phi| phi.order()).collect();
                orders.sort_unstable();
                orders.dedup();
                let kernels: Vec<usize> = members.iter().map(|phi| phi.kernel_order()).collect();
                println!(
                    "{kind}: {} maps, orders {:?}, kernel order {}, {} class(es)",
                    members.len(),
                    orders,
                    kernels[0],
                    equivalence_classes(&members).len()
                );
            }
            let all = family_4p(p)?;
            println!("total: {} maps, {} classes", all.len(), equivalence_classes(&all).len());
            if check_against_census {
                let record = open_census(store)?.get(4 * p)?;
                let proper: Vec<Vec<usize>> = record.proper().map(|phi| phi.images().to_vec()).collect();
                let fam: Vec<Vec<usize>> = all.iter().map(|phi| phi.images().to_vec()).collect();
                match first_difference(&proper, &fam) {
                    None => println!("matches the proper part of the census of Z_{}", 4 * p),
                    Some(diff) => {
                        println!("differs from the census of Z_{}: {diff}", 4 * p);
                        return Ok(ExitCode::FAILURE);
                    }
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Check { max, store } => {
            let report = check_census(&mut Census::with_store(store)?, max)?;
            for v in &report.violations {
                println!("{v}");
            }
            println!(
                "checked {} groups, {} skew morphisms: {} violation(s)",
                report.groups,
                report.morphisms,
                report.violations.len()
            );
            Ok(if report.passed() { ExitCode::SUCCESS } else { ExitCode::FAILURE })
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}
