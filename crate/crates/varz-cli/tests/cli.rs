use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn varz(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_varz"))
        .args(args)
        .env_remove("VARZ_NEC_ENGINE")
        .output()
        .expect("binary runs")
}

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../varz-core/tests/fixtures").join(name)
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

#[test]
fn bench_writes_record_and_step_complete_series() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("sgo");
    let o = varz(&["bench", "SGO", "--out", p(&out)]);
    assert!(o.status.success(), "{}", stderr(&o));
    let record = std::fs::read_to_string(out.join("run.toml")).unwrap();
    assert!(record.contains("[best]") && record.contains("name = \"SGO\""));
    let last_step: usize = record
        .lines()
        .find_map(|l| l.strip_prefix("last_step = "))
        .unwrap()
        .parse()
        .unwrap();
    for f in ["fitness.dat", "davg.dat", "best_probe.dat"] {
        let text = std::fs::read_to_string(out.join(f)).unwrap();
        let steps: Vec<usize> = text.lines().map(|l| l.split('\t').next().unwrap().parse().unwrap()).collect();
        assert_eq!(steps, (0..=last_step).collect::<Vec<_>>(), "{f}");
    }
    let best: f64 = stdout(&o).lines().find_map(|l| l.strip_prefix("best fitness")).unwrap().trim().parse().unwrap();
    assert!((best - 130.8323).abs() <= 0.5);
}

#[test]
fn bench_zero_steps_and_determinism() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a");
    let b = dir.path().join("b");
    for d in [&a, &b] {
        let o = varz(&["bench", "SPHERE", "--nt", "0", "--out", p(d)]);
        assert!(o.status.success(), "{}", stderr(&o));
    }
    let fa = std::fs::read_to_string(a.join("fitness.dat")).unwrap();
    assert_eq!(fa.lines().count(), 1);
    for f in ["fitness.dat", "davg.dat", "best_probe.dat"] {
        assert_eq!(std::fs::read(a.join(f)).unwrap(), std::fs::read(b.join(f)).unwrap());
    }
}

#[test]
fn bench_unknown_name_exits_with_validation_code() {
    let o = varz(&["bench", "NOPE"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("unknown benchmark"));
}

#[test]
fn analyze_reports_published_bands() {
    let o = varz(&["analyze", p(&fixture("loaded_bowtie.tsv")), "--window", "800", "12000"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let s = stdout(&o);
    assert!(s.starts_with("f_lo_mhz,f_hi_mhz,width_mhz,fc_mhz,frac_pct\n1655,1865,210,1760,11.9\n"), "{s}");
    assert!(s.contains("\n3185,5210,2025,4197.5,48.2\n"));
    assert!(s.contains("\nvswr,1.03,6.43\n"));

    let tight = varz(&["analyze", p(&fixture("loaded_bowtie.tsv")), "--threshold", "1.0"]);
    assert!(stdout(&tight).starts_with("f_lo_mhz,f_hi_mhz,width_mhz,fc_mhz,frac_pct\n\nquantity"));
}

#[test]
fn analyze_parse_error_names_the_line() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.tsv");
    std::fs::write(&bad, "F(MHz)\tRin (ohms)\tXin (ohms)\tVSWR//50\n800\t50\t0\t1\n815\tx\t0\t1\n").unwrap();
    let o = varz(&["analyze", p(&bad)]);
    assert_eq!(o.status.code(), Some(4));
    assert!(stderr(&o).contains("line 3"), "{}", stderr(&o));
}

#[test]
fn necgen_writes_published_bowtie_deck() {
    let dir = tempfile::tempdir().unwrap();
    let design = dir.path().join("bowtie.toml");
    std::fs::write(
        &design,
        "[bowtie]\narm_len_m = 0.051\nhalf_angle_deg = 39.4\nload_seg = 6\nr_load_ohm = 166.93\nz0_ohm = 715.0\n\n\
         [meta]\nrun_id = \"07022011_221747\"\nfile_id = \"07032011225840\"\nprobe_step = [1, 35]\n\
         file_name = \"BESTBOWTIE.NEC\"\n",
    )
    .unwrap();
    let deck = dir.path().join("BOWTIE.NEC");
    let o = varz(&["necgen", p(&design), "-o", p(&deck)]);
    assert!(o.status.success(), "{}", stderr(&o));
    let want = std::fs::read_to_string(fixture("best_bowtie.nec")).unwrap();
    assert_eq!(std::fs::read_to_string(&deck).unwrap(), want);

    std::fs::write(&design, std::fs::read_to_string(&design).unwrap().replace("39.4", "5.0")).unwrap();
    let o = varz(&["necgen", p(&design)]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn necparse_round_trips_into_analyze() {
    let dir = tempfile::tempdir().unwrap();
    let table = dir.path().join("sweep.tsv");
    let o = varz(&["necparse", p(&fixture("two_block_listing.out")), "--z0", "715", "-o", p(&table)]);
    assert!(o.status.success(), "{}", stderr(&o));
    let text = std::fs::read_to_string(&table).unwrap();
    assert_eq!(text.lines().count(), 3);
    assert!(text.lines().nth(1).unwrap().starts_with("800\t24.25\t3.91\t-3.34\t3.91\t111.51\t-34.45\t6.4"));

    let o = varz(&["analyze", p(&table)]);
    assert!(stdout(&o).contains("\neff_pct,24.25,39.36\n"), "{}", stdout(&o));

    let stale = varz(&["necparse", p(&fixture("two_block_listing.out")), "--z0", "715", "--expect-id", "1"]);
    assert_eq!(stale.status.code(), Some(3));
}

#[test]
fn optimize_refuses_antenna_objective_without_engine() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("out");
    let cfg = dir.path().join("yagi.toml");
    std::fs::write(
        &cfg,
        format!(
            "output_dir = {:?}\n\n[objective]\nkind = \"yagi\"\nf_lo_mhz = 275.0\nf_hi_mhz = 325.0\n",
            out.to_str().unwrap()
        ),
    )
    .unwrap();
    let o = varz(&["optimize", p(&cfg)]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("VARZ_NEC_ENGINE"), "{}", stderr(&o));
    assert!(!out.exists(), "no partial outputs");
}

#[test]
fn optimize_benchmark_matches_bench() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("gp.toml");
    std::fs::write(&cfg, "[objective]\nkind = \"benchmark\"\nname = \"HIMMELBLAU\"\n\n[cfo]\nnt = 100\n").unwrap();
    let a = dir.path().join("opt");
    let b = dir.path().join("bench");
    let o = varz(&["optimize", p(&cfg), "--out", p(&a)]);
    assert!(o.status.success(), "{}", stderr(&o));
    let o = varz(&["bench", "HIMMELBLAU", "--nt", "100", "--out", p(&b)]);
    assert!(o.status.success());
    assert_eq!(std::fs::read(a.join("fitness.dat")).unwrap(), std::fs::read(b.join("fitness.dat")).unwrap());
    let best = |d: &Path| {
        let r = std::fs::read_to_string(d.join("run.toml")).unwrap();
        r[r.find("[best]").unwrap()..r.find("[series]").unwrap()].to_string()
    };
    assert_eq!(best(&a), best(&b));
}

#[test]
fn bad_config_is_a_parse_error() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("bad.toml");
    std::fs::write(&cfg, "[objective]\nkind = \"benchmark\"\nname = \"GP\"\n[cfo]\nnt = -1\n").unwrap();
    let o = varz(&["optimize", p(&cfg)]);
    assert_eq!(o.status.code(), Some(4), "{}", stderr(&o));
}
