use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use cubeknot::floer::{cube_homology, grid_homology, AlexanderConvention, HomologyTable, Variant};
use cubeknot::format::{parse_file, serialize_cube, serialize_grid, Diagram};
use cubeknot::lifting::{lift_grid, LiftOptions};
use cubeknot::render::render_svg;
use cubeknot::selftest::run_selftest;
use cubeknot::{Axis, CubeDiagram, CubeMove, Error, FlatRef, OrientedGridDiagram, Plane, SegmentKind, SegmentRef};

#[derive(Parser)]
#[command(name = "cubeknot", version, about = "Cube diagrams of links: validation, moves, lifting and homology")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check a grid or cube file and report every violated condition.
    Validate { file: PathBuf },
    /// Project a cube diagram to a plane, writing a grid file.
    Project {
        file: PathBuf,
        #[arg(long, value_enum)]
        plane: PlaneArg,
        #[command(flatten)]
        out: Output,
    },
    /// Lift a grid diagram to a cube diagram.
    Lift {
        file: PathBuf,
        /// Orderings to try before falling back to surgery.
        #[arg(long)]
        budget: Option<usize>,
        #[arg(long)]
        no_surgery: bool,
        #[command(flatten)]
        out: Output,
    },
    /// Apply one move to a cube diagram.
    Move {
        file: PathBuf,
        /// Segment to stabilize, e.g. `XY:0`.
        #[arg(long, value_name = "SEGMENT", group = "mv")]
        stabilize: Option<String>,
        /// Segment whose tail starts the triple to remove, e.g. `ZX:2`.
        #[arg(long, value_name = "SEGMENT", group = "mv")]
        destabilize: Option<String>,
        /// Swap flats INDEX and INDEX+1 of AXIS.
        #[arg(long, num_args = 2, value_names = ["AXIS", "INDEX"], group = "mv")]
        commute: Option<Vec<String>>,
        #[command(flatten)]
        out: Output,
    },
    /// Cube homology table.
    Homology {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "y")]
        axis: AxisArg,
        #[command(flatten)]
        hom: HomologyArgs,
        #[command(flatten)]
        out: Output,
    },
    /// Grid homology table.
    Gridhomology {
        file: PathBuf,
        #[command(flatten)]
        hom: HomologyArgs,
        #[command(flatten)]
        out: Output,
    },
    /// Draw a grid diagram or a cube projection as SVG.
    Render {
        file: PathBuf,
        #[arg(long, value_enum)]
        plane: Option<PlaneArg>,
        #[command(flatten)]
        out: Output,
    },
    /// Run the invariant sweep.
    Selftest {
        /// Include the size-6 trefoil checks (slower).
        #[arg(long)]
        full: bool,
    },
}

#[derive(Args)]
struct Output {
    /// Output path (standard output when absent).
    #[arg(short = 'o', long = "output")]
    path: Option<PathBuf>,
}

#[derive(Args)]
struct HomologyArgs {
    #[arg(long, value_enum, default_value = "tilde")]
    variant: VariantArg,
    /// Use −(n−1)/2 in Alexander gradings instead of +(n−1)/2.
    #[arg(long)]
    normalize: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum PlaneArg {
    Xy,
    Yz,
    Zx,
}

impl From<PlaneArg> for Plane {
    fn from(p: PlaneArg) -> Plane {
        match p {
            PlaneArg::Xy => Plane::XY,
            PlaneArg::Yz => Plane::YZ,
            PlaneArg::Zx => Plane::ZX,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum AxisArg {
    X,
    Y,
    Z,
}

impl From<AxisArg> for Axis {
    fn from(a: AxisArg) -> Axis {
        match a {
            AxisArg::X => Axis::X,
            AxisArg::Y => Axis::Y,
            AxisArg::Z => Axis::Z,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum VariantArg {
    Tilde,
    FilteredHat,
    Minus,
}

impl From<VariantArg> for Variant {
    fn from(v: VariantArg) -> Variant {
        match v {
            VariantArg::Tilde => Variant::Tilde,
            VariantArg::FilteredHat => Variant::FilteredHat,
            VariantArg::Minus => Variant::Minus,
        }
    }
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Parse { .. } | Error::InvalidGrid(_) | Error::InvalidCube(_) | Error::InvalidInput(_) | Error::ConstraintCycle(_) => 1,
        Error::IllegalMove(_) => 2,
        Error::BudgetExhausted { .. } | Error::Surgery(_) => 3,
        Error::Invariant(_) => 4,
    }
}

fn emit(out: &Output, text: &str) -> cubeknot::Result<()> {
    match &out.path {
        Some(p) => fs::write(p, text).map_err(|e| Error::InvalidInput(format!("{}: {e}", p.display()))),
        None => {
            let mut so = std::io::stdout().lock();
            so.write_all(text.as_bytes()).and_then(|_| so.flush()).map_err(|e| Error::InvalidInput(e.to_string()))
        }
    }
}

fn load_cube(path: &Path) -> cubeknot::Result<CubeDiagram> {
    match parse_file(path)? {
        Diagram::Cube(c) => Ok(c),
        Diagram::Grid(_) => Err(Error::InvalidInput(format!("{} holds a grid diagram; expected a cube diagram", path.display()))),
    }
}

fn load_grid(path: &Path) -> cubeknot::Result<OrientedGridDiagram> {
    match parse_file(path)? {
        Diagram::Grid(g) => Ok(g),
        Diagram::Cube(_) => Err(Error::InvalidInput(format!("{} holds a cube diagram; expected a grid diagram", path.display()))),
    }
}

fn parse_segment(s: &str) -> cubeknot::Result<SegmentRef> {
    let bad = || Error::InvalidInput(format!("segment {s:?} is not of the form KIND:INDEX (KIND one of XY, YZ, ZX)"));
    let (kind, index) = s.split_once(':').or_else(|| s.strip_suffix(']').and_then(|t| t.split_once('['))).ok_or_else(bad)?;
    Ok(SegmentRef { kind: SegmentKind::parse(kind).ok_or_else(bad)?, index: index.parse().map_err(|_| bad())? })
}

fn table_text(header: String, t: &HomologyTable) -> String {
    format!("{header}\n{t}")
}

fn convention(normalize: bool) -> AlexanderConvention {
    if normalize {
        AlexanderConvention::Normalized
    } else {
        AlexanderConvention::Literal
    }
}

fn run(cli: Cli) -> cubeknot::Result<()> {
    match cli.command {
        Command::Validate { file } => {
            let d = parse_file(&file).inspect_err(|e| {
                println!("invalid: {e}");
                match e {
                    Error::InvalidCube(v) => v.iter().for_each(|x| println!("  {x}")),
                    Error::InvalidGrid(v) => v.iter().for_each(|x| println!("  {x}")),
                    _ => {}
                }
            })?;
            match d {
                Diagram::Grid(g) => println!("valid grid diagram: n={}, plane {}, {} component(s)", g.n(), g.orientation(), g.components().len()),
                Diagram::Cube(c) => println!("valid cube diagram: n={}, {} component(s)", c.n(), c.components().len()),
            }
            Ok(())
        }
        Command::Project { file, plane, out } => {
            let c = load_cube(&file)?;
            emit(&out, &serialize_grid(&c.project(plane.into())))
        }
        Command::Lift { file, budget, no_surgery, out } => {
            let g = load_grid(&file)?;
            let (c, r) = lift_grid(&g, LiftOptions { budget, surgery: !no_surgery, ..Default::default() })?;
            let text = format!(
                "# lift: size {}, untwisting stabilizations {}, orderings searched {}, surgeries {}, residual violations {}\n{}",
                r.size,
                r.untwist_stabilizations,
                r.orderings_searched,
                r.surgeries,
                r.residual.len(),
                serialize_cube(&c)
            );
            emit(&out, &text)
        }
        Command::Move { file, stabilize, destabilize, commute, out } => {
            let c = load_cube(&file)?;
            let m = match (stabilize, destabilize, commute) {
                (Some(s), None, None) => CubeMove::Stabilize { segment: parse_segment(&s)? },
                (None, Some(s), None) => CubeMove::Destabilize { segment: parse_segment(&s)? },
                (None, None, Some(v)) => {
                    let axis = Axis::parse(&v[0]).ok_or_else(|| Error::InvalidInput(format!("unknown axis {:?}", v[0])))?;
                    let index = v[1].parse().map_err(|_| Error::InvalidInput(format!("bad flat index {:?}", v[1])))?;
                    CubeMove::Commute { flat: FlatRef { axis, index } }
                }
                _ => return Err(Error::InvalidInput("give exactly one of --stabilize, --destabilize, --commute".into())),
            };
            emit(&out, &serialize_cube(&c.apply_move(&m)?))
        }
        Command::Homology { file, axis, hom, out } => {
            let c = load_cube(&file)?;
            let variant: Variant = hom.variant.into();
            let t = cube_homology(&c, axis.into(), variant, convention(hom.normalize))?;
            let header = format!(
                "# cube homology variant={} axis={} normalize={} hash={}",
                variant.name(),
                Axis::from(axis),
                hom.normalize,
                Diagram::Cube(c).hash()
            );
            emit(&out, &table_text(header, &t))
        }
        Command::Gridhomology { file, hom, out } => {
            let g = load_grid(&file)?;
            let variant: Variant = hom.variant.into();
            let t = grid_homology(&g, variant, convention(hom.normalize))?;
            let header =
                format!("# grid homology variant={} normalize={} hash={}", variant.name(), hom.normalize, Diagram::Grid(g).hash());
            emit(&out, &table_text(header, &t))
        }
        Command::Render { file, plane, out } => {
            let d = parse_file(&file)?;
            emit(&out, &render_svg(&d, plane.map(Plane::from))?)
        }
        Command::Selftest { full } => {
            let res = run_selftest(full, |o| {
                println!("{} {} — {}", if o.passed { "PASS" } else { "FAIL" }, o.name, o.detail);
            })?;
            println!("{} checks passed", res.len());
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    if let Some(t) = std::env::var("CUBEKNOT_THREADS").ok().and_then(|v| v.parse::<usize>().ok()) {
        // only fails if a pool already exists, in which case its size stands
        let _ = rayon::ThreadPoolBuilder::new().num_threads(t).build_global();
    }
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
