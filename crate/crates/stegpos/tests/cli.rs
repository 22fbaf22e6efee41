//! End-to-end tests of the command-line interface and its exit codes.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use stegpos::image_model::{encode_ppm, RasterImage};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_stegpos"))
}

fn write_random_cover(dir: &Path, name: &str, size: u32, seed: u64) -> PathBuf {
    let mut rng = StdRng::seed_from_u64(seed);
    let n = (size * size) as usize;
    let plane = |rng: &mut StdRng| (0..n).map(|_| rng.gen::<u8>()).collect::<Vec<u8>>();
    let img =
        RasterImage::from_planes(size, size, plane(&mut rng), plane(&mut rng), plane(&mut rng))
            .unwrap();
    let path = dir.join(name);
    std::fs::write(&path, encode_ppm(&img)).unwrap();
    path
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

#[test]
fn hide_then_reveal_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let cover = write_random_cover(dir.path(), "cover.ppm", 64, 1);
    let pos = dir.path().join("pos.spm");

    let out = bin()
        .args(["hide"])
        .arg(&cover)
        .arg("--out")
        .arg(&pos)
        .args(["--message", "HelloWorld", "--key-insecure", "sesame"])
        .output()
        .unwrap();
    assert!(out.status.success(), "{out:?}");
    assert!(stdout(&out).contains("positions: 70"));

    let out = bin()
        .args(["reveal"])
        .arg(&cover)
        .arg(&pos)
        .args(["--key-insecure", "sesame"])
        .output()
        .unwrap();
    assert!(out.status.success());
    assert_eq!(stdout(&out).trim_end(), "HelloWorld");
}

#[test]
fn key_comes_from_environment() {
    let dir = tempfile::tempdir().unwrap();
    let cover = write_random_cover(dir.path(), "cover.ppm", 64, 2);
    let pos = dir.path().join("pos.spm");

    let status = bin()
        .args(["hide"])
        .arg(&cover)
        .arg("--out")
        .arg(&pos)
        .args(["--message", "Hi"])
        .env("STEGPOS_KEY", "from-env")
        .status()
        .unwrap();
    assert!(status.success());

    let out = bin()
        .args(["reveal"])
        .arg(&cover)
        .arg(&pos)
        .env("STEGPOS_KEY", "from-env")
        .output()
        .unwrap();
    assert_eq!(stdout(&out).trim_end(), "Hi");
}

#[test]
fn wrong_key_exits_5() {
    let dir = tempfile::tempdir().unwrap();
    let cover = write_random_cover(dir.path(), "cover.ppm", 64, 3);
    let pos = dir.path().join("pos.spm");
    bin()
        .args(["hide"])
        .arg(&cover)
        .arg("--out")
        .arg(&pos)
        .args(["--message", "secret", "--key-insecure", "right"])
        .status()
        .unwrap();

    let out = bin()
        .args(["reveal"])
        .arg(&cover)
        .arg(&pos)
        .args(["--key-insecure", "wrong"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(5));
    assert!(String::from_utf8_lossy(&out.stderr).contains("wrong secret key"));
}

#[test]
fn over_capacity_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let cover = write_random_cover(dir.path(), "tiny.ppm", 4, 4);
    let long_message = "A".repeat(10_000);
    let out = bin()
        .args(["hide"])
        .arg(&cover)
        .arg("--out")
        .arg(dir.path().join("pos.spm"))
        .args(["--message", &long_message, "--key-insecure", "k"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn non_ascii_message_exits_3() {
    let dir = tempfile::tempdir().unwrap();
    let cover = write_random_cover(dir.path(), "cover.ppm", 16, 5);
    let out = bin()
        .args(["hide"])
        .arg(&cover)
        .arg("--out")
        .arg(dir.path().join("pos.spm"))
        .args(["--message", "héllo", "--key-insecure", "k"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn malformed_cover_exits_4() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.ppm");
    std::fs::write(&bad, b"P6\n4 4\n255\nshort").unwrap();
    let out = bin()
        .args(["hide"])
        .arg(&bad)
        .arg("--out")
        .arg(dir.path().join("pos.spm"))
        .args(["--message", "x", "--key-insecure", "k"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(4));
}

#[test]
fn garbage_posfile_exits_6() {
    let dir = tempfile::tempdir().unwrap();
    let cover = write_random_cover(dir.path(), "cover.ppm", 16, 6);
    let junk = dir.path().join("junk.spm");
    std::fs::write(&junk, b"not a position file at all, way past 52 bytes of junk data").unwrap();
    let out = bin()
        .args(["reveal"])
        .arg(&cover)
        .arg(&junk)
        .args(["--key-insecure", "k"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(6));
}

#[test]
fn analyze_dimension_mismatch_exits_7() {
    let dir = tempfile::tempdir().unwrap();
    let a = write_random_cover(dir.path(), "a.ppm", 8, 7);
    let b = write_random_cover(dir.path(), "b.ppm", 16, 8);
    let out = bin().args(["analyze"]).arg(&a).arg(&b).output().unwrap();
    assert_eq!(out.status.code(), Some(7));
}

#[test]
fn analyze_identical_reports_inf() {
    let dir = tempfile::tempdir().unwrap();
    let a = write_random_cover(dir.path(), "a.ppm", 8, 9);
    let out = bin()
        .args(["analyze"])
        .arg(&a)
        .arg(&a)
        .args(["--format", "keyvalue"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("mse=0.000000"));
    assert!(text.contains("psnr=inf"));
    assert!(text.contains("histograms_identical=true"));
}

#[test]
fn baseline_embed_changes_image_and_reveals() {
    let dir = tempfile::tempdir().unwrap();
    let cover = write_random_cover(dir.path(), "cover.ppm", 16, 10);
    let stego = dir.path().join("stego.ppm");
    let status = bin()
        .args(["baseline-embed"])
        .arg(&cover)
        .arg("--out")
        .arg(&stego)
        .args(["--message", "HelloWorld"])
        .status()
        .unwrap();
    assert!(status.success());

    let out = bin()
        .args(["baseline-reveal"])
        .arg(&stego)
        .args(["--chars", "10"])
        .output()
        .unwrap();
    assert_eq!(stdout(&out).trim_end(), "HelloWorld");

    // the classical path really does distort the cover
    let out = bin().args(["analyze"]).arg(&cover).arg(&stego).output().unwrap();
    let text = stdout(&out);
    assert!(text.contains("histograms: different"), "{text}");
    assert!(!text.contains("PSNR: inf"), "{text}");
}

#[test]
fn capacity_prints_exact_and_rounded() {
    let out = bin().args(["capacity", "64", "64"]).output().unwrap();
    let text = stdout(&out);
    assert!(text.contains("estimated matchable bits (exact): 3072"));
    assert!(text.contains("estimated characters (exact): 438"));
    assert!(text.contains("~3000"));
}

#[test]
fn seed_makes_hide_reproducible() {
    let dir = tempfile::tempdir().unwrap();
    let cover = write_random_cover(dir.path(), "cover.ppm", 32, 11);
    let mut outputs = Vec::new();
    for name in ["a.spm", "b.spm"] {
        let pos = dir.path().join(name);
        bin()
            .args(["hide"])
            .arg(&cover)
            .arg("--out")
            .arg(&pos)
            .args(["--message", "same", "--key-insecure", "k", "--seed", "42"])
            .status()
            .unwrap();
        outputs.push(std::fs::read(&pos).unwrap());
    }
    assert_eq!(outputs[0], outputs[1]);
}

#[test]
fn bound_name_is_split_on_reveal() {
    let dir = tempfile::tempdir().unwrap();
    let cover = write_random_cover(dir.path(), "lena.ppm", 32, 12);
    let pos = dir.path().join("pos.spm");
    bin()
        .args(["hide"])
        .arg(&cover)
        .arg("--out")
        .arg(&pos)
        .args(["--message", "HelloWorld", "--key-insecure", "k", "--bind-name", "Lena"])
        .status()
        .unwrap();

    let out = bin()
        .args(["reveal"])
        .arg(&cover)
        .arg(&pos)
        .args(["--key-insecure", "k"])
        .output()
        .unwrap();
    assert_eq!(stdout(&out).trim_end(), "HelloWorld");
    assert!(String::from_utf8_lossy(&out.stderr).contains("bound image name: Lena"));
}

#[test]
fn inspect_dumps_positions_with_key() {
    let dir = tempfile::tempdir().unwrap();
    let cover = write_random_cover(dir.path(), "cover.ppm", 16, 13);
    let pos = dir.path().join("pos.spm");
    bin()
        .args(["hide"])
        .arg(&cover)
        .arg("--out")
        .arg(&pos)
        .args(["--message", "A", "--key-insecure", "k"])
        .status()
        .unwrap();

    let out = bin().args(["inspect"]).arg(&pos).args(["--key-insecure", "k"]).output().unwrap();
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("7 positions"));
    assert_eq!(text.lines().count(), 8); // summary line + 7 positions

    let out = bin().args(["inspect"]).arg(&pos).args(["--key-insecure", "bad"]).output().unwrap();
    assert_eq!(out.status.code(), Some(5));
}
