use std::fs;
use std::fs::File;
use std::io::BufReader;
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use hausdorff_cluster::analysis::{detect_backsteps, entropy_curve};
use hausdorff_cluster::datasets::{
    backstep_dataset, concentric_dataset, glasses_dataset, single_triangle_counterexample,
    LabeledPointSet,
};
use hausdorff_cluster::io::{
    read_cluster_input, read_dendrogram_json, read_prices, read_returns, write_dendrogram_json,
    write_entropy_curve, write_matrix, write_points, write_prices, write_returns, ClusterInput,
};
use hausdorff_cluster::linkage::{agglomerate, Dendrogram, Linkage, TiePolicy};
use hausdorff_cluster::metric::DistanceMatrix;
use hausdorff_cluster::render::render_dendrogram_svg;
use hausdorff_cluster::synthetic::synthetic_price_table;

#[derive(Parser)]
#[command(
    name = "hcluster",
    version,
    about = "Hierarchical clustering with single, complete and Hausdorff linkage"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a dendrogram from 2-D points or a distance matrix (CSV)
    Cluster(ClusterArgs),
    /// Turn a price table into log-returns
    Returns {
        /// Price table CSV (date column plus one column per series)
        #[arg(long)]
        input: PathBuf,
        /// Where to write the returns CSV
        #[arg(long)]
        output: PathBuf,
    },
    /// Build a correlation-distance matrix from returns or prices
    Distances {
        /// Input CSV
        #[arg(long)]
        input: PathBuf,
        /// Where to write the matrix CSV
        #[arg(long)]
        output: PathBuf,
        /// What the input file holds
        #[arg(long, value_enum, default_value_t = TableKind::Returns)]
        from: TableKind,
    },
    /// Compute the cluster-size entropy curve of a dendrogram
    Entropy {
        /// Dendrogram JSON
        #[arg(long)]
        input: PathBuf,
        /// Where to write the curve CSV
        #[arg(long)]
        output: PathBuf,
    },
    /// Write one of the built-in benchmark datasets as points CSV
    Dataset(DatasetArgs),
    /// Render a dendrogram JSON as SVG
    Render {
        /// Dendrogram JSON
        #[arg(long)]
        input: PathBuf,
        /// Where to write the SVG
        #[arg(long)]
        output: PathBuf,
    },
    /// Generate a synthetic sector-structured price table
    Prices {
        /// Number of trading days
        #[arg(long, default_value_t = 252)]
        days: usize,
        /// RNG seed; identical seeds give identical tables
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Where to write the price CSV
        #[arg(long)]
        output: PathBuf,
    },
}

#[derive(Args)]
struct ClusterArgs {
    /// Points CSV (header `x,y,group`) or labelled distance matrix CSV
    #[arg(long)]
    input: PathBuf,
    /// Where to write the dendrogram JSON
    #[arg(long)]
    output: PathBuf,
    #[arg(long, value_enum)]
    linkage: LinkageArg,
    /// How to resolve exactly equal merge candidates
    #[arg(long, value_enum, default_value_t = TiesArg::Lex)]
    ties: TiesArg,
    /// Seed for --ties random
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Also render the tree as SVG to this path
    #[arg(long)]
    svg: Option<PathBuf>,
}

#[derive(Args)]
struct DatasetArgs {
    #[arg(long, value_enum)]
    name: DatasetName,
    /// Where to write the points CSV
    #[arg(long)]
    output: PathBuf,
    /// Points on the inner ring (concentric only)
    #[arg(long, default_value_t = 24)]
    inner: usize,
    /// Points on the outer ring (concentric only)
    #[arg(long, default_value_t = 40)]
    outer: usize,
    /// Inner ring radius (concentric only)
    #[arg(long, default_value_t = 2.0)]
    r_inner: f64,
    /// Outer ring radius (concentric only)
    #[arg(long, default_value_t = 5.0)]
    r_outer: f64,
}

#[derive(Clone, Copy, ValueEnum)]
enum LinkageArg {
    Single,
    Complete,
    Hausdorff,
}

impl From<LinkageArg> for Linkage {
    fn from(value: LinkageArg) -> Self {
        match value {
            LinkageArg::Single => Linkage::Single,
            LinkageArg::Complete => Linkage::Complete,
            LinkageArg::Hausdorff => Linkage::Hausdorff,
        }
    }
}

#[derive(Clone, Copy, PartialEq, ValueEnum)]
enum TiesArg {
    /// First candidate in ascending cluster-id order
    Lex,
    /// Uniform choice among candidates, driven by --seed
    Random,
}

#[derive(Clone, Copy, ValueEnum)]
enum TableKind {
    Prices,
    Returns,
}

#[derive(Clone, Copy, ValueEnum)]
enum DatasetName {
    Glasses,
    Concentric,
    Backstep,
    Triangle,
}

fn main() {
    if let Err(err) = run(Cli::parse()) {
        eprintln!("error: {err:#}");
        std::process::exit(1);
    }
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Cluster(args) => cluster(args),
        Command::Returns { input, output } => returns(&input, &output),
        Command::Distances {
            input,
            output,
            from,
        } => distances(&input, &output, from),
        Command::Entropy { input, output } => entropy(&input, &output),
        Command::Dataset(args) => dataset(args),
        Command::Render { input, output } => render(&input, &output),
        Command::Prices { days, seed, output } => prices(days, seed, &output),
    }
}

fn read_text(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn create(path: &Path) -> Result<File> {
    File::create(path).with_context(|| format!("creating {}", path.display()))
}

fn load_dendrogram(path: &Path) -> Result<Dendrogram> {
    let file = File::open(path).with_context(|| format!("reading {}", path.display()))?;
    read_dendrogram_json(BufReader::new(file))
        .with_context(|| format!("parsing {}", path.display()))
}

fn point_matrix(set: &LabeledPointSet) -> Result<DistanceMatrix> {
    let labels = set
        .group_labels()
        .iter()
        .enumerate()
        .map(|(i, g)| format!("{i}:{g}"))
        .collect();
    Ok(DistanceMatrix::from_points_with_labels(set.points(), labels)?)
}

fn cluster(args: ClusterArgs) -> Result<()> {
    let text = read_text(&args.input)?;
    let matrix = match read_cluster_input(&text)
        .with_context(|| format!("parsing {}", args.input.display()))?
    {
        ClusterInput::Points(set) => point_matrix(&set)?,
        ClusterInput::Matrix(m) => m,
    };
    let ties = match args.ties {
        TiesArg::Lex => TiePolicy::Lexicographic,
        TiesArg::Random => TiePolicy::SeededRandom(args.seed),
    };
    let dendrogram = agglomerate(&matrix, args.linkage.into(), ties)?;
    let backsteps = detect_backsteps(&dendrogram);
    write_dendrogram_json(create(&args.output)?, &dendrogram, Some(&backsteps))?;
    if let Some(svg_path) = &args.svg {
        fs::write(svg_path, render_dendrogram_svg(&dendrogram))
            .with_context(|| format!("writing {}", svg_path.display()))?;
    }
    println!(
        "{} items -> {} merges, {} backsteps -> {}",
        matrix.n(),
        dendrogram.merges.len(),
        backsteps.len(),
        args.output.display()
    );
    Ok(())
}

fn returns(input: &Path, output: &Path) -> Result<()> {
    let table = read_prices(read_text(input)?.as_bytes())
        .with_context(|| format!("parsing {}", input.display()))?;
    let series = table.return_series()?;
    let dates = &table.dates()[1..];
    write_returns(create(output)?, dates, &series)?;
    println!(
        "{} series x {} returns -> {}",
        series.len(),
        dates.len(),
        output.display()
    );
    Ok(())
}

fn distances(input: &Path, output: &Path, from: TableKind) -> Result<()> {
    let text = read_text(input)?;
    let series = match from {
        TableKind::Prices => read_prices(text.as_bytes())
            .with_context(|| format!("parsing {}", input.display()))?
            .return_series()?,
        TableKind::Returns => {
            read_returns(text.as_bytes())
                .with_context(|| format!("parsing {}", input.display()))?
                .1
        }
    };
    let matrix = DistanceMatrix::from_series(&series)?;
    write_matrix(create(output)?, &matrix)?;
    println!("{0} x {0} distances -> {1}", matrix.n(), output.display());
    Ok(())
}

fn entropy(input: &Path, output: &Path) -> Result<()> {
    let dendrogram = load_dendrogram(input)?;
    let curve = entropy_curve(&dendrogram);
    write_entropy_curve(create(output)?, &curve)?;
    println!("{} levels -> {}", curve.points.len(), output.display());
    Ok(())
}

fn dataset(args: DatasetArgs) -> Result<()> {
    let set = match args.name {
        DatasetName::Glasses => glasses_dataset(),
        DatasetName::Backstep => backstep_dataset(),
        DatasetName::Triangle => single_triangle_counterexample(),
        DatasetName::Concentric => {
            concentric_dataset(args.inner, args.outer, args.r_inner, args.r_outer)?
        }
    };
    write_points(create(&args.output)?, &set)?;
    println!("{} points -> {}", set.len(), args.output.display());
    Ok(())
}

fn render(input: &Path, output: &Path) -> Result<()> {
    let dendrogram = load_dendrogram(input)?;
    fs::write(output, render_dendrogram_svg(&dendrogram))
        .with_context(|| format!("writing {}", output.display()))?;
    println!("{} leaves -> {}", dendrogram.n_leaves, output.display());
    Ok(())
}

fn prices(days: usize, seed: u64, output: &Path) -> Result<()> {
    let table = synthetic_price_table(days, seed)?;
    write_prices(create(output)?, &table)?;
    println!(
        "{} series x {} days (seed {seed}) -> {}",
        table.n_series(),
        table.n_days(),
        output.display()
    );
    Ok(())
}
