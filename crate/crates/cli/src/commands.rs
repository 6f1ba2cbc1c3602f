use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;
use std::time::Instant;

use clap::Args;
use log::{info, warn};
use quatcomp::imaging::{open_mask, save_mask_png};
use quatcomp::{
    gen_mask, image_to_quaternion, quaternion_to_image, solve_qlnf, solve_tqlna, Completion, CompletionProblem,
    MaskMatrix, MetricReport, RgbImage,
};

use crate::config::{resolve, FileConfig, Method, SolverFlags, SolverSettings};
use crate::error::{CliError, CliResult};
use crate::report::{append_csv, write_csv, Metrics, Row};

pub const DEFAULT_SEED: u64 = 42;
pub const DEFAULT_SR_LIST: [f64; 6] = [0.1, 0.15, 0.25, 0.35, 0.45, 0.5];

#[derive(Args, Debug)]
pub struct MaskArgs {
    /// Mask height in pixels
    #[arg(long, requires = "cols", conflicts_with = "like")]
    pub rows: Option<usize>,
    /// Mask width in pixels
    #[arg(long, requires = "rows")]
    pub cols: Option<usize>,
    /// Take the dimensions from this image
    #[arg(long)]
    pub like: Option<PathBuf>,
    /// Sampling rate in [0, 1]
    #[arg(long)]
    pub sr: Option<f64>,
    #[arg(long)]
    pub seed: Option<u64>,
    /// Output PNG (white = observed)
    #[arg(long, short)]
    pub output: PathBuf,
}

#[derive(Args, Debug)]
pub struct CompleteArgs {
    /// Image to complete
    #[arg(long, short)]
    pub input: PathBuf,
    /// Where to write the recovered PNG
    #[arg(long, short)]
    pub output: PathBuf,
    #[arg(long, value_enum)]
    pub method: Option<Method>,
    /// Sampling rate for a generated mask
    #[arg(long, conflicts_with = "mask")]
    pub sr: Option<f64>,
    /// Mask PNG (white = observed)
    #[arg(long)]
    pub mask: Option<PathBuf>,
    #[arg(long)]
    pub seed: Option<u64>,
    /// Ground truth for scoring (defaults to the input image)
    #[arg(long)]
    pub truth: Option<PathBuf>,
    /// Append a result row to this CSV
    #[arg(long)]
    pub csv: Option<PathBuf>,
    #[command(flatten)]
    pub solver: SolverFlags,
}

#[derive(Args, Debug)]
pub struct BenchmarkArgs {
    /// Directory of PNG images
    pub dir: PathBuf,
    /// Comma-separated methods
    #[arg(long, value_enum, value_delimiter = ',')]
    pub method: Vec<Method>,
    /// Comma-separated sampling rates
    #[arg(long, value_delimiter = ',')]
    pub sr: Vec<f64>,
    #[arg(long)]
    pub seed: Option<u64>,
    /// Parallel worker slots
    #[arg(long, env = "QUATCOMP_WORKERS")]
    pub workers: Option<usize>,
    /// Output CSV
    #[arg(long)]
    pub csv: PathBuf,
    #[command(flatten)]
    pub solver: SolverFlags,
}

fn check_sr(sr: f64) -> CliResult<f64> {
    if (0.0..=1.0).contains(&sr) {
        Ok(sr)
    } else {
        Err(CliError::Usage(format!("sampling rate must lie in [0, 1], got {sr}")))
    }
}

fn open_image(path: &Path) -> CliResult<RgbImage> {
    RgbImage::open(path).map_err(|source| CliError::Input {
        path: path.to_path_buf(),
        source,
    })
}

fn file_label(path: &Path) -> String {
    path.file_name()
        .map(|n| n.to_string_lossy().into_owned())
        .unwrap_or_else(|| path.display().to_string())
}

pub fn cmd_mask(args: &MaskArgs, file: &FileConfig) -> CliResult<()> {
    let (rows, cols) = match (&args.like, args.rows, args.cols) {
        (Some(path), _, _) => open_image(path)?.shape(),
        (None, Some(r), Some(c)) => (r, c),
        _ => return Err(CliError::Usage("give --rows and --cols, or --like <image>".into())),
    };
    let sr = args
        .sr
        .or(file.get("sr")?)
        .ok_or_else(|| CliError::Usage("--sr is required".into()))?;
    let seed = resolve(args.seed, file, "seed", DEFAULT_SEED)?;
    let mask = gen_mask(rows, cols, check_sr(sr)?, seed)?;
    save_mask_png(&mask, &args.output).map_err(|e| CliError::Output {
        path: args.output.clone(),
        source: Box::new(e),
    })?;
    println!("{}: {}x{} mask, {} observed", args.output.display(), rows, cols, mask.observed_count());
    Ok(())
}

/// Runs one solver, timing only the solve itself.
pub fn run_solver(
    method: Method,
    settings: &SolverSettings,
    problem: &CompletionProblem,
) -> CliResult<(Completion, f64)> {
    let (rows, cols) = problem.shape();
    settings.validate(method, rows, cols)?;
    let start = Instant::now();
    let completion = match method {
        Method::Qlnf => solve_qlnf(problem, &settings.qlnf)?,
        Method::Tqlna => solve_tqlna(problem, &settings.tqlna)?,
    };
    Ok((completion, start.elapsed().as_secs_f64()))
}

fn metrics(reference: &RgbImage, test: &RgbImage) -> CliResult<Metrics> {
    let r = MetricReport::evaluate(reference, test)?;
    Ok(Metrics {
        psnr_db: r.psnr_db,
        ssim: r.ssim,
    })
}

pub fn cmd_complete(args: &CompleteArgs, file: &FileConfig) -> CliResult<()> {
    let method = resolve(args.method, file, "method", Method::Tqlna)?;
    let settings = SolverSettings::merge(&args.solver, file)?;
    let image = open_image(&args.input)?;
    let (rows, cols) = image.shape();

    let (mask, sr) = match &args.mask {
        Some(path) => {
            let mask = open_mask(path).map_err(|source| CliError::Input {
                path: path.clone(),
                source,
            })?;
            if mask.shape() != (rows, cols) {
                return Err(CliError::MaskShape {
                    path: path.clone(),
                    mask_rows: mask.rows(),
                    mask_cols: mask.cols(),
                    rows,
                    cols,
                });
            }
            let sr = mask.sampling_rate();
            (mask, sr)
        }
        None => {
            let sr = args
                .sr
                .or(file.get("sr")?)
                .ok_or_else(|| CliError::Usage("one of --sr or --mask is required".into()))?;
            let seed = resolve(args.seed, file, "seed", DEFAULT_SEED)?;
            (gen_mask(rows, cols, check_sr(sr)?, seed)?, sr)
        }
    };
    let reference = match &args.truth {
        Some(path) => {
            let truth = open_image(path)?;
            if truth.shape() != (rows, cols) {
                return Err(CliError::Usage(format!(
                    "truth image {} is {}x{} but the input is {rows}x{cols}",
                    path.display(),
                    truth.height(),
                    truth.width()
                )));
            }
            truth
        }
        None => image.clone(),
    };
    settings.validate(method, rows, cols)?;

    let problem = CompletionProblem::new(&image_to_quaternion(&image), mask)?;
    let (completion, wall) = run_solver(method, &settings, &problem)?;
    let recovered = quaternion_to_image(&completion.matrix);
    recovered.save_png(&args.output).map_err(|e| CliError::Output {
        path: args.output.clone(),
        source: Box::new(e),
    })?;

    let result = metrics(&reference, &recovered)?;
    let baseline = metrics(&reference, &image.masked(problem.mask())?)?;
    info!(
        "{method}: {} iterations ({}), {wall:.2} s",
        completion.iterations,
        completion.status.as_str()
    );
    println!(
        "{}: psnr {:.4} dB ssim {:.4} (baseline {:.4} dB / {:.4}), {} iterations, {:.2} s",
        args.output.display(),
        result.psnr_db,
        result.ssim,
        baseline.psnr_db,
        baseline.ssim,
        completion.iterations,
        wall
    );

    if let Some(csv) = &args.csv {
        let row = Row {
            image: file_label(&args.input),
            method,
            sr,
            r_or_d: settings.rank_param(method),
            lambda: settings.lambda(method),
            result: Some(result),
            wall_seconds: wall,
            iterations: completion.iterations,
            status: completion.status.as_str().to_string(),
            baseline: Some(baseline),
        };
        append_csv(csv, &row)?;
    }
    Ok(())
}

/// Sorted `.png` files directly inside `dir`.
pub fn list_images(dir: &Path) -> CliResult<Vec<PathBuf>> {
    let entries = std::fs::read_dir(dir)
        .map_err(|e| CliError::Usage(format!("cannot read directory {}: {e}", dir.display())))?;
    let mut images = Vec::new();
    for entry in entries {
        let path = entry?.path();
        let is_png = path
            .extension()
            .is_some_and(|ext| ext.eq_ignore_ascii_case("png"));
        if is_png && path.is_file() {
            images.push(path);
        }
    }
    images.sort();
    Ok(images)
}

struct Job {
    image: usize,
    sr: f64,
    method: Method,
}

struct Bench<'a> {
    images: &'a [(String, Result<RgbImage, String>)],
    settings: &'a SolverSettings,
    seed: u64,
}

impl Bench<'_> {
    fn run(&self, job: &Job) -> Row {
        let (name, image) = &self.images[job.image];
        let mut row = Row {
            image: name.clone(),
            method: job.method,
            sr: job.sr,
            r_or_d: self.settings.rank_param(job.method),
            lambda: self.settings.lambda(job.method),
            result: None,
            wall_seconds: 0.0,
            iterations: 0,
            status: String::new(),
            baseline: None,
        };
        let outcome = match image {
            Ok(image) => self.solve(image, job, &mut row),
            Err(msg) => Err(msg.clone()),
        };
        if let Err(msg) = outcome {
            warn!("{name} {} sr {}: {msg}", job.method, job.sr);
            row.status = format!("error: {msg}");
        }
        row
    }

    fn solve(&self, image: &RgbImage, job: &Job, row: &mut Row) -> Result<(), String> {
        let (rows, cols) = image.shape();
        let mask: MaskMatrix = gen_mask(rows, cols, job.sr, self.seed).map_err(|e| e.to_string())?;
        let observed = image.masked(&mask).map_err(|e| e.to_string())?;
        row.baseline = Some(metrics(image, &observed).map_err(|e| e.to_string())?);
        let problem = CompletionProblem::new(&image_to_quaternion(image), mask).map_err(|e| e.to_string())?;
        let (completion, wall) = run_solver(job.method, self.settings, &problem).map_err(|e| e.to_string())?;
        let recovered = quaternion_to_image(&completion.matrix);
        row.result = Some(metrics(image, &recovered).map_err(|e| e.to_string())?);
        row.wall_seconds = wall;
        row.iterations = completion.iterations;
        row.status = completion.status.as_str().to_string();
        info!(
            "{} {} sr {}: {:.3} dB in {wall:.2} s",
            row.image,
            job.method,
            job.sr,
            row.result.as_ref().map_or(f64::NAN, |m| m.psnr_db)
        );
        Ok(())
    }
}

pub fn cmd_benchmark(args: &BenchmarkArgs, file: &FileConfig) -> CliResult<()> {
    let methods = if args.method.is_empty() {
        file.get_list("method")?.unwrap_or_else(|| vec![Method::Qlnf, Method::Tqlna])
    } else {
        args.method.clone()
    };
    let srs = if args.sr.is_empty() {
        file.get_list("sr")?.unwrap_or_else(|| DEFAULT_SR_LIST.to_vec())
    } else {
        args.sr.clone()
    };
    for &sr in &srs {
        check_sr(sr)?;
    }
    let seed = resolve(args.seed, file, "seed", DEFAULT_SEED)?;
    let default_workers = std::thread::available_parallelism().map_or(1, |n| n.get());
    let workers = resolve(args.workers, file, "workers", default_workers)?.max(1);
    let settings = SolverSettings::merge(&args.solver, file)?;

    let paths = list_images(&args.dir)?;
    if paths.is_empty() {
        warn!("no PNG images in {}; writing header only", args.dir.display());
        return write_csv(&args.csv, &[]);
    }
    let images: Vec<(String, Result<RgbImage, String>)> = paths
        .iter()
        .map(|p| (file_label(p), open_image(p).map_err(|e| e.to_string())))
        .collect();

    let mut jobs = Vec::new();
    for image in 0..images.len() {
        for &sr in &srs {
            for &method in &methods {
                jobs.push(Job { image, sr, method });
            }
        }
    }
    info!("{} jobs on {} workers", jobs.len(), workers.min(jobs.len()));

    let bench = Bench {
        images: &images,
        settings: &settings,
        seed,
    };
    let next = AtomicUsize::new(0);
    let slots: Mutex<Vec<Option<Row>>> = Mutex::new(vec![None; jobs.len()]);
    std::thread::scope(|s| {
        for _ in 0..workers.min(jobs.len()) {
            s.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                let Some(job) = jobs.get(i) else { break };
                let row = bench.run(job);
                slots.lock().expect("result lock")[i] = Some(row);
            });
        }
    });
    let rows: Vec<Row> = slots
        .into_inner()
        .expect("result lock")
        .into_iter()
        .map(|r| r.expect("every job produces a row"))
        .collect();
    write_csv(&args.csv, &rows)?;
    let failed = rows.iter().filter(|r| r.status.starts_with("error")).count();
    println!("{}: {} rows ({failed} errors)", args.csv.display(), rows.len());
    Ok(())
}
