use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use quatcomp::imaging::open_mask;
use quatcomp::RgbImage;

fn bin() -> Command {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_quatcomp"));
    cmd.env_remove("QUATCOMP_WORKERS").env("RUST_LOG", "error");
    cmd
}

fn data(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name)
}

fn run(cmd: &mut Command) -> Output {
    let out = cmd.output().expect("binary runs");
    if !out.status.success() {
        eprintln!("stderr: {}", String::from_utf8_lossy(&out.stderr));
    }
    out
}

fn read_rows(path: &Path) -> (csv::StringRecord, Vec<csv::StringRecord>) {
    let mut r = csv::Reader::from_path(path).unwrap();
    let header = r.headers().unwrap().clone();
    let rows = r.records().map(|r| r.unwrap()).collect();
    (header, rows)
}

const HEADER: &str =
    "image,method,sr,r_or_d,lambda,psnr_db,ssim,wall_seconds,iterations,status,baseline_psnr_db,baseline_ssim";

#[test]
fn mask_has_exact_count_and_is_reproducible() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.png");
    let b = dir.path().join("b.png");
    for path in [&a, &b] {
        let out = run(bin().args(["mask", "--rows", "300", "--cols", "300", "--sr", "0.15", "--seed", "42", "-o"]).arg(path));
        assert!(out.status.success());
    }
    let mask = open_mask(&a).unwrap();
    assert_eq!(mask.shape(), (300, 300));
    assert_eq!(mask.observed_count(), 13500);
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());

    let full = dir.path().join("full.png");
    let out = run(bin().args(["mask", "--sr", "1", "--like"]).arg(data("coffee_48.png")).arg("-o").arg(&full));
    assert!(out.status.success());
    let mask = open_mask(&full).unwrap();
    assert_eq!(mask.shape(), (48, 48));
    assert_eq!(mask.observed_count(), 48 * 48);
}

#[test]
fn mask_rejects_bad_rate() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(bin().args(["mask", "--rows", "4", "--cols", "4", "--sr", "1.5", "-o"]).arg(dir.path().join("m.png")));
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn complete_missing_mask_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(bin()
        .args(["complete", "-i"])
        .arg(data("coffee_48.png"))
        .arg("-o")
        .arg(dir.path().join("out.png"))
        .arg("--mask")
        .arg(dir.path().join("missing.png")));
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("missing.png"));
    assert!(!dir.path().join("out.png").exists());
}

#[test]
fn complete_mask_shape_mismatch_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let mask = dir.path().join("m.png");
    assert!(run(bin().args(["mask", "--rows", "20", "--cols", "30", "--sr", "0.5", "-o"]).arg(&mask)).status.success());
    let out = run(bin()
        .args(["complete", "-i"])
        .arg(data("coffee_48.png"))
        .arg("-o")
        .arg(dir.path().join("out.png"))
        .arg("--mask")
        .arg(&mask));
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("20x30"));
}

#[test]
fn complete_requires_sr_or_mask() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(bin().args(["complete", "-i"]).arg(data("coffee_48.png")).arg("-o").arg(dir.path().join("o.png")));
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn complete_full_mask_reproduces_input() {
    let dir = tempfile::tempdir().unwrap();
    let output = dir.path().join("out.png");
    let csv = dir.path().join("r.csv");
    for _ in 0..2 {
        let out = run(bin()
            .args(["complete", "--sr", "1", "-i"])
            .arg(data("coffee_48.png"))
            .arg("-o")
            .arg(&output)
            .arg("--csv")
            .arg(&csv));
        assert!(out.status.success());
        let input = RgbImage::open(data("coffee_48.png")).unwrap();
        let recovered = RgbImage::open(&output).unwrap();
        assert_eq!(input, recovered);
    }
    let text = std::fs::read_to_string(&csv).unwrap();
    assert_eq!(text.lines().next().unwrap(), HEADER);
    let (_, rows) = read_rows(&csv);
    assert_eq!(rows.len(), 2);
    for row in &rows {
        assert_eq!(&row[2], "1");
        assert_eq!(&row[5], "inf");
    }
}

#[test]
fn complete_beats_zero_fill() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("r.csv");
    let truth = data("astronaut_48.png");
    let out = run(bin()
        .args(["complete", "--sr", "0.25", "--seed", "7", "-i"])
        .arg(&truth)
        .arg("--truth")
        .arg(&truth)
        .arg("-o")
        .arg(dir.path().join("out.png"))
        .arg("--csv")
        .arg(&csv));
    assert!(out.status.success());
    let (_, rows) = read_rows(&csv);
    let psnr: f64 = rows[0][5].parse().unwrap();
    let baseline: f64 = rows[0][10].parse().unwrap();
    assert_eq!(&rows[0][1], "tqlna");
    assert!(psnr > baseline, "{psnr} vs {baseline}");
}

#[test]
fn flags_override_config_file() {
    let dir = tempfile::tempdir().unwrap();
    let config = dir.path().join("run.conf");
    std::fs::write(&config, "method = qlnf\nrank-d = 4\nmax-iter = 7\nsr = 0.6\n").unwrap();
    let csv = dir.path().join("r.csv");
    let out = run(bin()
        .arg("--config")
        .arg(&config)
        .args(["complete", "--rank-d", "6", "-i"])
        .arg(data("coffee_48.png"))
        .arg("-o")
        .arg(dir.path().join("out.png"))
        .arg("--csv")
        .arg(&csv));
    assert!(out.status.success());
    let (_, rows) = read_rows(&csv);
    assert_eq!(&rows[0][1], "qlnf");
    assert_eq!(&rows[0][2], "0.6");
    assert_eq!(&rows[0][3], "6");
    assert!(rows[0][8].parse::<usize>().unwrap() <= 7);

    std::fs::write(&config, "colour = red\n").unwrap();
    let out = run(bin().arg("--config").arg(&config).args(["mask", "--rows", "2", "--cols", "2", "--sr", "0.5", "-o"]).arg(dir.path().join("m.png")));
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn benchmark_empty_directory_writes_header_only() {
    let dir = tempfile::tempdir().unwrap();
    let images = dir.path().join("images");
    std::fs::create_dir(&images).unwrap();
    let csv = dir.path().join("b.csv");
    let out = run(bin().arg("benchmark").arg(&images).arg("--csv").arg(&csv));
    assert!(out.status.success());
    assert_eq!(std::fs::read_to_string(&csv).unwrap().trim_end(), HEADER);
    assert!(String::from_utf8_lossy(&out.stderr).is_empty());

    let out = run(bin().env("RUST_LOG", "warn").arg("benchmark").arg(&images).arg("--csv").arg(&csv));
    assert!(String::from_utf8_lossy(&out.stderr).contains("no PNG images"));
}

#[test]
fn benchmark_rows_per_image_method_and_rate() {
    let dir = tempfile::tempdir().unwrap();
    let images = dir.path().join("images");
    std::fs::create_dir(&images).unwrap();
    std::fs::copy(data("astronaut_48.png"), images.join("astronaut_48.png")).unwrap();
    std::fs::write(images.join("notes.txt"), "ignored").unwrap();
    let csv = dir.path().join("b.csv");
    let out = run(bin().arg("benchmark").arg(&images).arg("--csv").arg(&csv).args(["--workers", "2"]));
    assert!(out.status.success());
    let (header, rows) = read_rows(&csv);
    assert_eq!(header.iter().collect::<Vec<_>>().join(","), HEADER);
    assert_eq!(rows.len(), 12);
    for method in ["qlnf", "tqlna"] {
        let series: Vec<(f64, f64)> = rows
            .iter()
            .filter(|r| &r[1] == method)
            .map(|r| (r[2].parse().unwrap(), r[5].parse().unwrap()))
            .collect();
        assert_eq!(series.len(), 6);
        assert_eq!(series.iter().map(|s| s.0).collect::<Vec<_>>(), [0.1, 0.15, 0.25, 0.35, 0.45, 0.5]);
        for w in series.windows(2) {
            assert!(w[1].1 >= w[0].1, "{method}: {series:?}");
        }
    }
}

#[test]
fn benchmark_records_unreadable_images_as_error_rows() {
    let dir = tempfile::tempdir().unwrap();
    let images = dir.path().join("images");
    std::fs::create_dir(&images).unwrap();
    std::fs::write(images.join("a_broken.png"), b"not a png").unwrap();
    std::fs::copy(data("coffee_48.png"), images.join("b_coffee.png")).unwrap();
    let csv = dir.path().join("b.csv");
    let out = run(bin()
        .arg("benchmark")
        .arg(&images)
        .args(["--method", "qlnf", "--sr", "0.3,0.6", "--csv"])
        .arg(&csv));
    assert!(out.status.success());
    let (_, rows) = read_rows(&csv);
    assert_eq!(rows.len(), 4);
    assert!(rows[..2].iter().all(|r| &r[0] == "a_broken.png" && r[9].starts_with("error") && r[5].is_empty()));
    assert!(rows[2..].iter().all(|r| &r[0] == "b_coffee.png" && !r[9].starts_with("error")));
}

#[test]
fn benchmark_workers_from_environment() {
    let dir = tempfile::tempdir().unwrap();
    let images = dir.path().join("images");
    std::fs::create_dir(&images).unwrap();
    std::fs::copy(data("coffee_48.png"), images.join("coffee.png")).unwrap();
    let csv = dir.path().join("b.csv");
    let out = run(bin().env("QUATCOMP_WORKERS", "0x").arg("benchmark").arg(&images).arg("--csv").arg(&csv));
    assert_eq!(out.status.code(), Some(2));
    let out = run(bin()
        .env("QUATCOMP_WORKERS", "3")
        .arg("benchmark")
        .arg(&images)
        .args(["--method", "qlnf", "--sr", "0.5", "--csv"])
        .arg(&csv));
    assert!(out.status.success());
    assert_eq!(read_rows(&csv).1.len(), 1);
}
