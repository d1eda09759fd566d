//! The `digicover` command line.

pub mod format;
pub mod render;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use crate::cover1d::{cover_loop, cover_path_any, cover_path_odd, DigitalPath};
use crate::cover2d::{cover_2d, cover_2d_any, cover_rectangle, RectangleMap};
use crate::digital::{DigitalMap, LatticePoint};
use crate::error::Error;
use crate::oracle::{enumerate_fillers, is_filler, verify_cover, FillerQuery, DEFAULT_BUDGET};
use crate::subdivision::subdivide;
use format::{emit, parse, AnyFile, CoverFile, FormatError, ImageFile, MapFile};
use render::Scene;

#[derive(Debug, Parser)]
#[command(
    name = "digicover",
    version,
    about = "Subdivisions of digital images and covers of maps between them"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Write S(X, k) and the projection S(X, k) -> X.
    Subdivide {
        image: PathBuf,
        #[arg(long)]
        k: i64,
        /// Output directory; receives subdivided.json and projection.json.
        #[arg(long)]
        out: PathBuf,
    },
    /// Build and verify a cover of a map.
    Cover {
        #[arg(long, value_enum)]
        mode: Mode,
        map: PathBuf,
        /// Odd parity: factor 2k+1 on both sides. Any parity: S(X, k+1) -> S(Y, k).
        /// Loop mode always covers into S(Y, k).
        #[arg(long)]
        k: i64,
        #[arg(long, value_enum, default_value = "odd")]
        parity: Parity,
        /// Base point for loop mode, as comma-separated coordinates.
        #[arg(long)]
        base: Option<String>,
        #[arg(long)]
        out: PathBuf,
    },
    /// Draw an image, map or cover file.
    Render {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "svg")]
        format: Format,
        /// Tint each domain point by its value; needs a map or cover file.
        #[arg(long)]
        show_fibers: bool,
        #[arg(long)]
        out: PathBuf,
    },
    /// Count the continuous fillers S(X, k) -> S(Y, k) of a map.
    Oracle {
        map: PathBuf,
        #[arg(long)]
        k: i64,
        /// How many fillers to write out.
        #[arg(long, default_value_t = 0)]
        limit: usize,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
        /// Directory for filler files.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Path,
    Loop,
    Rect,
    #[value(name = "2d")]
    TwoD,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Parity {
    Odd,
    Any,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Svg,
    Ascii,
}

#[derive(Debug)]
pub enum Failure {
    Validation(String),
    Verification(String),
    Budget(u64),
    Io(String),
}

impl Failure {
    pub fn exit_code(&self) -> u8 {
        match self {
            Failure::Io(_) => 1,
            Failure::Validation(_) => 2,
            Failure::Verification(_) => 3,
            Failure::Budget(_) => 4,
        }
    }
}

impl std::fmt::Display for Failure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Failure::Validation(m) => write!(f, "invalid input: {m}"),
            Failure::Verification(m) => write!(f, "verification failed: {m}"),
            Failure::Budget(b) => write!(f, "BUDGET exceeded after {b} candidate evaluations"),
            Failure::Io(m) => write!(f, "{m}"),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::BudgetExceeded { budget } => Failure::Budget(budget),
            Error::VerificationFailed(m) => Failure::Verification(m),
            e => Failure::Validation(e.to_string()),
        }
    }
}

impl From<FormatError> for Failure {
    fn from(e: FormatError) -> Self {
        Failure::Validation(e.to_string())
    }
}

type Outcome = std::result::Result<(), Failure>;

fn read(path: &Path) -> std::result::Result<String, Failure> {
    fs::read_to_string(path)
        .map_err(|e| Failure::Validation(format!("cannot read {}: {e}", path.display())))
}

fn write(path: &Path, text: &str) -> Outcome {
    fs::write(path, text).map_err(|e| Failure::Io(format!("cannot write {}: {e}", path.display())))
}

fn read_map(path: &Path) -> std::result::Result<DigitalMap, Failure> {
    Ok(parse::<MapFile>(&read(path)?)?.to_map()?)
}

fn parse_point(text: &str) -> std::result::Result<LatticePoint, Failure> {
    let coords = text
        .split(',')
        .map(|c| c.trim().parse::<i64>())
        .collect::<std::result::Result<Vec<_>, _>>()
        .map_err(|_| Failure::Validation(format!("cannot read point {text:?}")))?;
    Ok(LatticePoint::new(coords)?)
}

/// Runs one command, printing a short report on stdout.
pub fn run(cli: Cli) -> Outcome {
    match cli.command {
        Command::Subdivide { image, k, out } => cmd_subdivide(&image, k, &out),
        Command::Cover {
            mode,
            map,
            k,
            parity,
            base,
            out,
        } => cmd_cover(mode, &map, k, parity, base.as_deref(), &out),
        Command::Render {
            file,
            format,
            show_fibers,
            out,
        } => cmd_render(&file, format, show_fibers, &out),
        Command::Oracle {
            map,
            k,
            limit,
            budget,
            out,
        } => cmd_oracle(&map, k, limit, budget, out.as_deref()),
    }
}

pub fn main_with(cli: Cli) -> ExitCode {
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

fn cmd_subdivide(image: &Path, k: i64, out: &Path) -> Outcome {
    let x = parse::<ImageFile>(&read(image)?)?.to_image()?;
    if k < 1 {
        return Err(Failure::Validation(format!(
            "--k must be at least 1, got {k}"
        )));
    }
    let bundle = subdivide(&x, k)?;
    fs::create_dir_all(out)
        .map_err(|e| Failure::Io(format!("cannot create {}: {e}", out.display())))?;
    write(
        &out.join("subdivided.json"),
        &emit(&ImageFile::from_image(bundle.subdivided())),
    )?;
    write(
        &out.join("projection.json"),
        &emit(&MapFile::from_map(bundle.projection())),
    )?;
    println!(
        "subdivided {} points into {}",
        x.len(),
        bundle.subdivided().len()
    );
    Ok(())
}

fn cmd_cover(
    mode: Mode,
    map: &Path,
    k: i64,
    parity: Parity,
    base: Option<&str>,
    out: &Path,
) -> Outcome {
    let f = read_map(map)?;
    let base = base.map(parse_point).transpose()?;
    if base.is_some() && mode != Mode::Loop {
        return Err(Failure::Validation(
            "--base only applies to loop mode".into(),
        ));
    }
    let odd = parity == Parity::Odd;
    let (cover, k_dom, k_cod) = match mode {
        Mode::Path => {
            let alpha = DigitalPath::from_map(&f)?;
            if odd {
                (cover_path_odd(&alpha, k)?.to_map(), 2 * k + 1, 2 * k + 1)
            } else {
                (cover_path_any(&alpha, k)?, k + 1, k)
            }
        }
        Mode::Loop => {
            let gamma = DigitalPath::from_map(&f)?;
            let lifted = cover_loop(&gamma, k, base.as_ref())?;
            let k_dom = if k % 2 == 1 { k } else { k + 1 };
            (lifted.to_map(), k_dom, k)
        }
        Mode::Rect => {
            if !odd {
                return Err(Failure::Validation(
                    "rect mode builds odd covers only; use --mode 2d".into(),
                ));
            }
            (
                cover_rectangle(&RectangleMap::new(f.clone())?, k)?,
                2 * k + 1,
                2 * k + 1,
            )
        }
        Mode::TwoD => {
            if odd {
                (cover_2d(&f, k)?, 2 * k + 1, 2 * k + 1)
            } else {
                (cover_2d_any(&f, k)?, k + 1, k)
            }
        }
    };
    let certificate = verify_cover(&f, &cover, k_dom, k_cod)?;
    let passed = certificate.passed();
    let summary = certificate.summary();
    let file = CoverFile {
        mode: mode
            .to_possible_value()
            .expect("named mode")
            .get_name()
            .to_string(),
        k_domain: k_dom,
        k_codomain: k_cod,
        certificate,
        cover: MapFile::from_map(&cover),
    };
    write(out, &emit(&file))?;
    if !passed {
        return Err(Failure::Verification(summary));
    }
    println!(
        "cover S(X, {k_dom}) -> S(Y, {k_cod}) on {} points: {summary}",
        cover.domain().len()
    );
    Ok(())
}

fn cmd_render(file: &Path, format: Format, show_fibers: bool, out: &Path) -> Outcome {
    let map = match parse::<AnyFile>(&read(file)?)? {
        AnyFile::Image(x) => {
            if show_fibers {
                return Err(Failure::Validation(
                    "--show-fibers needs a map or cover file".into(),
                ));
            }
            return draw(
                &Scene {
                    image: &x.to_image()?,
                    groups: None,
                },
                format,
                out,
            );
        }
        AnyFile::Map(m) => m.to_map()?,
        AnyFile::Cover(c) => c.cover.to_map()?,
    };
    let image = map.domain();
    if image.dim() > 2 {
        return Err(Failure::Validation(format!(
            "cannot draw a {}-dimensional image",
            image.dim()
        )));
    }
    let groups = show_fibers.then(|| {
        let mut targets: Vec<&LatticePoint> = map.pairs().map(|(_, v)| v).collect();
        targets.sort();
        targets.dedup();
        map.pairs()
            .map(|(_, v)| targets.binary_search(&v).expect("listed target"))
            .collect()
    });
    draw(&Scene { image, groups }, format, out)
}

fn draw(scene: &Scene, format: Format, out: &Path) -> Outcome {
    if scene.image.dim() > 2 {
        return Err(Failure::Validation(format!(
            "cannot draw a {}-dimensional image",
            scene.image.dim()
        )));
    }
    let text = match format {
        Format::Svg => render::svg(scene),
        Format::Ascii => render::ascii(scene),
    };
    write(out, &text)?;
    println!("drew {} points", scene.image.len());
    Ok(())
}

fn cmd_oracle(map: &Path, k: i64, limit: usize, budget: u64, out: Option<&Path>) -> Outcome {
    let f = read_map(map)?;
    if k < 1 {
        return Err(Failure::Validation(format!(
            "--k must be at least 1, got {k}"
        )));
    }
    let query = FillerQuery::new(&f, k, k);
    let set = match enumerate_fillers(&query, limit, budget) {
        Ok(set) => set,
        Err(Error::BudgetExceeded { budget }) => {
            println!("BUDGET exceeded ({budget} candidate evaluations)");
            return Err(Failure::Budget(budget));
        }
        Err(e) => return Err(e.into()),
    };
    println!(
        "fillers: {} ({} candidate evaluations)",
        set.count, set.evaluations
    );
    if k % 2 == 1 {
        let canonical = match f.domain().dim() {
            1 => DigitalPath::from_map(&f)
                .and_then(|a| cover_path_odd(&a, (k - 1) / 2))
                .map(|c| c.to_map()),
            2 => cover_2d(&f, (k - 1) / 2),
            _ => Err(Error::InvalidArgument("no canonical cover".into())),
        };
        if let Ok(c) = canonical {
            let found = if set.truncated() {
                is_filler(&query, &c)?
            } else {
                set.fillers.contains(&c)
            };
            println!(
                "canonical cover: {}",
                if found { "contained" } else { "missing" }
            );
        }
    }
    if let Some(dir) = out {
        fs::create_dir_all(dir)
            .map_err(|e| Failure::Io(format!("cannot create {}: {e}", dir.display())))?;
        for (i, g) in set.fillers.iter().enumerate() {
            write(
                &dir.join(format!("filler_{i:04}.json")),
                &emit(&MapFile::from_map(g)),
            )?;
        }
    }
    Ok(())
}
