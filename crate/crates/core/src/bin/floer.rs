use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::json;

use floer::disks::{self, BlaschkeDisk, Region};
use floer::{complex, induction, novikov, volume, PointCode};

#[derive(Parser)]
#[command(name = "floer", version, about = "Floer homology of (RP^k, T^k) and related computations")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, global = true, default_value_t = Format::Json)]
    format: Format,

    /// Worker threads for parallel kernels (default: all cores).
    #[arg(long, global = true, env = "FLOER_THREADS")]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Rank of the differential and dim HF over Z2 (odd k).
    Homology {
        #[arg(long)]
        k: u32,
    },
    /// Maslov-2 disk count through a generator and the parity of d^2.
    Obstruction {
        #[arg(long)]
        k: u32,
    },
    /// Boundary matrix over Z2.
    Boundary {
        #[arg(long)]
        k: u32,
        /// Also write the matrix in the hex dump format to PATH.
        #[arg(long, value_name = "PATH")]
        dump_matrix: Option<PathBuf>,
    },
    /// Dimension ledger of the inductive step from CF(2n-1) to CF(2n+1).
    Recursion {
        #[arg(long)]
        n: u32,
    },
    /// Homology over the Novikov field.
    Novikov {
        #[arg(long)]
        k: u32,
        #[arg(long, default_value_t = 4)]
        precision: u32,
        /// Write the deformed differential as JSON (row, col, scalar) triples to PATH.
        #[arg(long, value_name = "PATH")]
        dump_matrix: Option<PathBuf>,
    },
    /// Holomorphic disks and strips.
    #[command(subcommand)]
    Disks(DisksCommand),
    /// Torus/projective-space volume ratios against the intersection bound.
    Volume {
        #[arg(long, default_value_t = 10)]
        n_max: u32,
    },
}

#[derive(Subcommand)]
enum DisksCommand {
    /// The k+1 isolated strips out of a generator.
    Strips {
        #[arg(long)]
        k: u32,
        /// Generator mask, decimal or 0b-prefixed binary.
        #[arg(long, value_parser = parse_mask)]
        point: u64,
    },
    /// Maslov index of a random Blaschke disk by boundary winding.
    Winding(WindingArgs),
    /// Fubini-Study energy of the disk [z^D:1:...:1].
    Energy {
        #[arg(long)]
        k: u32,
        #[arg(long, default_value_t = 1)]
        degree: usize,
        #[arg(long, value_enum, default_value_t = RegionArg::Full)]
        region: RegionArg,
        #[arg(long, default_value_t = 32)]
        grid: usize,
    },
}

#[derive(Args)]
struct WindingArgs {
    /// Per-coordinate degrees d0,d1,...,dk.
    #[arg(long, value_delimiter = ',', required = true)]
    degrees: Vec<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 4096)]
    samples: usize,
    /// Zeros are drawn from the disk of this radius.
    #[arg(long, default_value_t = 0.9)]
    radius: f64,
}

#[derive(Clone, Copy, ValueEnum)]
enum RegionArg {
    Upper,
    Full,
}

fn parse_mask(s: &str) -> Result<u64, String> {
    let parsed = match s.strip_prefix("0b") {
        Some(bits) => u64::from_str_radix(bits, 2),
        None => s.parse(),
    };
    parsed.map_err(|e| format!("invalid mask {s:?}: {e}"))
}

/// Streams records as JSON (one document) or CSV (header plus rows).
struct Output {
    format: Format,
    out: BufWriter<io::StdoutLock<'static>>,
}

impl Output {
    fn json(&mut self, value: &serde_json::Value) -> io::Result<()> {
        serde_json::to_writer(&mut self.out, value)?;
        writeln!(self.out)
    }

    fn emit<T: Serialize>(&mut self, json: serde_json::Value, rows: &[T]) -> io::Result<()> {
        match self.format {
            Format::Json => self.json(&json),
            Format::Csv => {
                let mut w = csv::Writer::from_writer(&mut self.out);
                for row in rows {
                    w.serialize(row).map_err(io::Error::other)?;
                }
                w.flush()
            }
        }
    }
}

fn run(cli: Cli) -> Result<(), Box<dyn std::error::Error>> {
    if let Some(n) = cli.threads {
        rayon::ThreadPoolBuilder::new().num_threads(n).build_global()?;
    }
    let mut out = Output {
        format: cli.format,
        out: BufWriter::new(io::stdout().lock()),
    };
    match cli.command {
        Command::Homology { k } => {
            let h = complex::homology(k)?;
            out.emit(serde_json::to_value(h)?, &[h])?;
        }
        Command::Obstruction { k } => {
            let r = complex::obstruction(k)?;
            if !r.square_matches {
                return Err("computed d^2 disagrees with the disk count".into());
            }
            #[derive(Serialize)]
            struct Row {
                k: u32,
                phi_total: u32,
                square_zero: bool,
            }
            let row = Row {
                k,
                phi_total: r.phi_total(),
                square_zero: r.square_is_zero,
            };
            out.emit(serde_json::to_value(&row)?, &[row])?;
        }
        Command::Boundary { k, dump_matrix } => {
            let m = complex::boundary_matrix(k)?;
            if let Some(path) = &dump_matrix {
                let mut f = BufWriter::new(File::create(path)?);
                m.write_dump(&mut f)?;
                f.flush()?;
            }
            #[derive(Serialize)]
            struct Entry {
                row: usize,
                col: usize,
            }
            let entries: Vec<Entry> = (0..m.rows())
                .flat_map(|r| m.row(r).iter_ones().map(move |c| Entry { row: r, col: c }).collect::<Vec<_>>())
                .collect();
            let dump = m.to_dump_string();
            let rows: Vec<&str> = dump.lines().skip(1).collect();
            let json = json!({
                "k": k,
                "size": m.rows(),
                "dump_matrix": dump_matrix,
                "rows": rows,
            });
            out.emit(json, &entries)?;
        }
        Command::Recursion { n } => {
            let r = induction::recursion_check(n)?;
            out.emit(serde_json::to_value(&r)?, &[r])?;
        }
        Command::Novikov {
            k,
            precision,
            dump_matrix,
        } => {
            let h = novikov::hf_dimension_novikov(k, precision)?;
            if let Some(path) = &dump_matrix {
                let m = novikov::novikov_boundary_matrix(k, precision)?;
                let mut f = BufWriter::new(File::create(path)?);
                serde_json::to_writer(&mut f, &m.entries())?;
                writeln!(f)?;
                f.flush()?;
            }
            let mut json = serde_json::to_value(h)?;
            json["dump_matrix"] = json!(dump_matrix);
            out.emit(json, &[h])?;
        }
        Command::Disks(DisksCommand::Strips { k, point }) => {
            let p = PointCode::from_mask(k, point)?;
            #[derive(Serialize)]
            struct Strip {
                index: usize,
                start: u64,
                end: u64,
                start_signs: String,
                end_signs: String,
                maslov_disk: usize,
                maslov_strip: usize,
            }
            let strips = disks::isolated_strips(p)
                .iter()
                .enumerate()
                .map(|(index, d)| {
                    let (s, e) = disks::strip_endpoints(d)?;
                    Ok(Strip {
                        index,
                        start: s.mask(),
                        end: e.mask(),
                        start_signs: s.to_string(),
                        end_signs: e.to_string(),
                        maslov_disk: d.maslov(),
                        maslov_strip: d.maslov() / 2,
                    })
                })
                .collect::<floer::Result<Vec<_>>>()?;
            let json = json!({ "k": k, "point": point, "strips": strips });
            out.emit(json, &strips)?;
        }
        Command::Disks(DisksCommand::Winding(args)) => {
            let mut rng = ChaCha8Rng::seed_from_u64(args.seed);
            let d = BlaschkeDisk::random(&args.degrees, args.radius, &mut rng)?;
            let winding = disks::winding_maslov(&d, args.samples)?;
            #[derive(Serialize)]
            struct Row {
                degrees: String,
                seed: u64,
                samples: usize,
                radius: f64,
                winding_maslov: i64,
                expected: usize,
            }
            let row = Row {
                degrees: args.degrees.iter().map(|d| d.to_string()).collect::<Vec<_>>().join(","),
                seed: args.seed,
                samples: args.samples,
                radius: args.radius,
                winding_maslov: winding,
                expected: d.maslov(),
            };
            let json = json!({
                "degrees": args.degrees,
                "seed": args.seed,
                "samples": args.samples,
                "radius": args.radius,
                "winding_maslov": winding,
                "expected": d.maslov(),
            });
            out.emit(json, &[row])?;
        }
        Command::Disks(DisksCommand::Energy { k, degree, region, grid }) => {
            let (region, name) = match region {
                RegionArg::Upper => (Region::UpperHalf, "upper"),
                RegionArg::Full => (Region::FullDisk, "full"),
            };
            let d = BlaschkeDisk::power(k, degree)?;
            let energy = disks::energy(&d, region, grid)?;
            #[derive(Serialize)]
            struct Row {
                k: u32,
                degree: usize,
                region: &'static str,
                grid: usize,
                energy: f64,
            }
            let row = Row {
                k,
                degree,
                region: name,
                grid,
                energy,
            };
            out.emit(serde_json::to_value(&row)?, &[row])?;
        }
        Command::Volume { n_max } => {
            let table = volume::comparison_table(n_max)?;
            #[derive(Serialize)]
            struct Row {
                n: u32,
                ratio: f64,
                bound: f64,
                active: bool,
            }
            let rows: Vec<Row> = table
                .iter()
                .map(|r| Row {
                    n: r.n,
                    ratio: r.ratio,
                    bound: r.bound,
                    active: r.active,
                })
                .collect();
            out.emit(json!({ "n_max": n_max, "rows": table }), &rows)?;
        }
    }
    out.out.flush()?;
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("floer: {e}");
            ExitCode::from(1)
        }
    }
}
