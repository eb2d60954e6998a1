//! Acceptance criteria 1-12, one line each. Runs without the libtest harness
//! so the lines always reach stdout.
//!
//! Exit status is nonzero if any criterion fails for a reason other than the
//! findings listed in `KNOWN_OPEN`, and also if a listed finding stops
//! failing (the list must then be updated).

use gspin_cli::{run_replay, run_suite, strip_timing, Record, Report, Suite, SuiteConfig, Verdict};
use std::collections::BTreeSet;
use std::path::PathBuf;
use std::time::{Duration, Instant};

/// Shipped scripts whose FOURIER step fails because the printed unipotent
/// generators do not normalize the larger algebra once n >= 3.
const KNOWN_OPEN: &[&str] = &[
    "odd_cuspidality_n3_k1",
    "odd_cuspidality_n3_k2",
    "odd_cuspidality_n3_k3",
    "odd_u3u4_n3_k1",
    "odd_u3u4_n3_k2",
    "odd_u3u4_n3_k3",
];

/// Script families that must be shipped at n = 2 and n = 3.
const FAMILIES: &[&str] = &[
    "odd_u1_divides_u2",
    "odd_u1_divides_dagger_u2",
    "odd_u2u3deep",
    "odd_fexpdeeper",
    "odd_cuspidality",
    "odd_u3u4",
    "even_u1a_sim_u2a",
    "even_u2u3deep",
    "even_cuspidality",
    "even_theta",
];

struct Line {
    ok: bool,
    text: String,
}

fn line(k: usize, ok: bool, what: &str, detail: String) -> Line {
    Line {
        ok,
        text: format!("criterion {k:>2} {} {what}: {detail}", if ok { "PASS" } else { "FAIL" }),
    }
}

fn timed<T>(f: impl FnOnce() -> T) -> (T, Duration) {
    let t = Instant::now();
    let x = f();
    (x, t.elapsed())
}

fn suite(s: Suite, n_min: usize, n_max: usize) -> (Report, Duration) {
    let mut c = SuiteConfig::new(s);
    c.n_min = Some(n_min);
    c.n_max = Some(n_max);
    timed(|| run_suite(&c).expect("valid configuration"))
}

fn with_prefix<'a>(r: &'a Report, prefix: &str) -> Vec<&'a Record> {
    r.records.iter().filter(|x| x.id.starts_with(prefix)).collect()
}

/// All records with the prefix pass; at least one exists.
fn all_pass(r: &Report, prefix: &str) -> (bool, String) {
    let recs = with_prefix(r, prefix);
    let bad: Vec<&str> = recs.iter().filter(|x| x.verdict == Verdict::Fail).map(|x| x.id.as_str()).collect();
    (!recs.is_empty() && bad.is_empty(), format!("{} checks, failing {bad:?}", recs.len()))
}

fn within(d: Duration, limit: Duration) -> (bool, String) {
    (d < limit, format!("{:.2}s (limit {}s)", d.as_secs_f64(), limit.as_secs()))
}

fn scripts_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../scripts")
}

fn main() {
    let mut lines = Vec::new();
    let secs = Duration::from_secs;

    let (rd, t) = suite(Suite::RootDatum, 2, 6);
    let (ok, d) = all_pass(&rd, "root-datum/dual/");
    let (fast, td) = within(t, secs(1));
    lines.push(line(1, ok && fast, "root-datum duality n=2..6", format!("{d}; {td}")));

    let (wy, t) = suite(Suite::Weyl, 1, 4);
    let (ok, d) = all_pass(&wy, "weyl/faithful/");
    let (fast, td) = within(t, secs(10));
    lines.push(line(2, ok && fast, "Weyl action vs matrices, 500 samples per type and rank", format!("{d}; {td}")));
    let (ok, d) = all_pass(&wy, "weyl/w-m/");
    lines.push(line(3, ok, "|W(M)| = r!*2^r for even-block shapes", d));

    let (un, t) = suite(Suite::Unramified, 1, 4);
    let (ok, d) = all_pass(&un, "unramified/pairing/");
    let (fast, td) = within(t, secs(30));
    lines.push(line(4, ok && fast, "unramified pairing vs exhaustive search, weak lift", format!("{d}; {td}")));

    let (co, t) = suite(Suite::Cosets, 2, 3);
    let (fast, td) = within(t, secs(60));
    let (a, da) = all_pass(&co, "cosets/even-");
    let (b, db) = all_pass(&co, "cosets/witnesses/");
    lines.push(line(5, a && b && fast, "even coset vanishing and witnesses", format!("{da}; witnesses {db}; {td}")));
    let (ok, d) = all_pass(&co, "cosets/odd/");
    lines.push(line(6, ok && fast, "odd coset vanishing and descent survivor", format!("{d}; {td}")));
    let (ok, d) = all_pass(&co, "cosets/double-coset/");
    let (fast, td) = within(t, secs(120));
    lines.push(line(7, ok && fast, "double cosets vs brute force, m <= 9", format!("{d}; {td}")));

    let mut pc = SuiteConfig::new(Suite::Periods);
    pc.scripts = Some(scripts_dir());
    let pr = run_suite(&pc).expect("shipped scripts parse");
    let (ok, d) = all_pass(&pr, "periods/h-a/");
    lines.push(line(8, ok, "h_a carries Psi to Psi^a, a in {1,2,3,5}, n=2,3", d));
    let (ok, d) = all_pass(&pr, "periods/invt/");
    lines.push(line(9, ok, "Invt(Psi^a) = [a], stable under 100 Levi conjugations", d));
    let stab: Vec<String> = (2..=3)
        .flat_map(|n| (1..=3).map(move |a| format!("periods/stabilizer/n={n}/a={a}")))
        .collect();
    let bad: Vec<&String> = stab
        .iter()
        .filter(|id| pr.get(id).is_none_or(|r| r.verdict != Verdict::Pass))
        .collect();
    lines.push(line(10, bad.is_empty(), "stabilizer pattern, n=2,3, a=1,2,3", format!("failing {bad:?}")));

    let (rep, t) = timed(|| run_replay(&scripts_dir()).expect("shipped scripts parse"));
    let names: BTreeSet<&str> = rep.records.iter().map(|r| r.id.as_str()).collect();
    let missing: Vec<String> = FAMILIES
        .iter()
        .flat_map(|f| [2, 3].map(|n| format!("{f}_n{n}")))
        .filter(|p| !names.iter().any(|s| *s == p || s.starts_with(&format!("{p}_"))))
        .collect();
    let failed: Vec<&str> = rep
        .records
        .iter()
        .filter(|r| r.verdict == Verdict::Fail)
        .map(|r| r.id.as_str())
        .collect();
    let axioms = rep.records.iter().filter(|r| r.verdict == Verdict::Axiom).count();
    let (fast, td) = within(t, secs(600));
    lines.push(line(
        11,
        failed.is_empty() && missing.is_empty() && fast,
        "shipped derivation scripts replay",
        format!(
            "{} scripts, {} failing {failed:?}, {axioms} via AXIOM, missing families {missing:?}; {td}",
            rep.records.len(),
            failed.len()
        ),
    ));
    let known: BTreeSet<&str> = KNOWN_OPEN.iter().copied().collect();
    let failed_set: BTreeSet<&str> = failed.iter().copied().collect();

    let cfg = SuiteConfig::new(Suite::All);
    let first = run_suite(&cfg).expect("defaults are valid").render(true);
    let second = run_suite(&cfg).expect("defaults are valid").render(true);
    let same = strip_timing(&first) == strip_timing(&second);
    lines.push(line(
        12,
        same,
        "two `verify all` runs agree modulo timing",
        format!("{} report lines", strip_timing(&first).lines().count()),
    ));

    for l in &lines {
        println!("{}", l.text);
    }
    let unexpected: Vec<usize> = lines
        .iter()
        .enumerate()
        .filter(|(i, l)| !l.ok && !(*i == 10 && failed_set == known && missing.is_empty() && fast))
        .map(|(i, _)| i + 1)
        .collect();
    if !failed_set.is_empty() {
        println!("criterion 11 open findings (not suppressed): {}", failed.join(", "));
    }
    if failed_set != known {
        println!("criterion 11 failing set differs from KNOWN_OPEN {KNOWN_OPEN:?}");
    }
    if !unexpected.is_empty() || failed_set != known {
        println!("unexpected failures in criteria {unexpected:?}");
        std::process::exit(1);
    }
}
