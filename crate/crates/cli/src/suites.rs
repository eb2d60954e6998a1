//! The named verification suites. Each suite expands its configuration into a
//! list of independent checks, runs them in parallel and sorts the records by
//! id.

use crate::oracle::expected_tag;
use crate::report::{Record, Report, Verdict};
use anyhow::{bail, Context, Result};
use gspin_core::arith::{is_integral, square_class_of, Q};
use gspin_core::cosets::{
    brute_force_double_cosets, case_survivors, enumerate_minimal_reps, explicit_survivor, odd_descent_prefix,
    p1_survivor_prefix, survives_general_position, CosetCase, I0Mode, LeviShape, Witness,
};
use gspin_core::periods::appendix::appendix_scripts;
use gspin_core::periods::{
    conjugate_period, general_position, h_a_carries_psi, invt, make_standard_period, parse_script,
    random_levi_element, replay, stabilizer_check, DerivationScript, Invt, PeriodRef, ReplayReport,
};
use gspin_core::root_datum::{build_datum, cartan_matrix, dual_datum, Family, Parity};
use gspin_core::unramified::{
    descent_parameter, pair_parameters, pairing_holds, random_selfdual, verify_weak_lift, SplitTag,
};
use gspin_core::weyl::{agrees_with_matrix, enumerate_all, enumerate_w_m, maps_levi_to_standard, random_element, WeylType};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use std::collections::BTreeSet;
use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;
use std::time::{Duration, Instant};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Suite {
    RootDatum,
    Weyl,
    Unramified,
    Cosets,
    Periods,
    All,
}

impl Suite {
    pub const EACH: [Suite; 5] = [Suite::RootDatum, Suite::Weyl, Suite::Unramified, Suite::Cosets, Suite::Periods];

    pub fn name(self) -> &'static str {
        match self {
            Suite::RootDatum => "root-datum",
            Suite::Weyl => "weyl",
            Suite::Unramified => "unramified",
            Suite::Cosets => "cosets",
            Suite::Periods => "periods",
            Suite::All => "all",
        }
    }

    /// Default and largest supported rank.
    fn ranks(self) -> (usize, usize, usize) {
        match self {
            Suite::RootDatum => (2, 6, 8),
            Suite::Weyl => (1, 4, 5),
            Suite::Unramified => (1, 4, 5),
            Suite::Cosets => (2, 3, 5),
            Suite::Periods => (2, 3, 4),
            Suite::All => (2, 3, 4),
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        Suite::EACH
            .into_iter()
            .chain([Suite::All])
            .find(|x| x.name() == s)
            .ok_or_else(|| format!("unknown suite {s:?}; expected root-datum, weyl, unramified, cosets, periods or all"))
    }
}

#[derive(Clone, Debug)]
pub struct SuiteConfig {
    pub suite: Suite,
    pub n_min: Option<usize>,
    pub n_max: Option<usize>,
    pub a: Vec<Q>,
    /// Script directory for the periods suite; the expander output for the
    /// configured ranks is used when absent.
    pub scripts: Option<PathBuf>,
}

impl SuiteConfig {
    pub fn new(suite: Suite) -> Self {
        SuiteConfig {
            suite,
            n_min: None,
            n_max: None,
            a: default_a(),
            scripts: None,
        }
    }

    fn range(&self, suite: Suite) -> Result<(usize, usize)> {
        let (lo, hi, max) = suite.ranks();
        let lo = self.n_min.unwrap_or(lo);
        let hi = self.n_max.unwrap_or(hi);
        if lo > hi {
            bail!("empty rank range {lo}..{hi}");
        }
        if hi > max {
            bail!("suite {suite} supports n <= {max}, got n-max {hi}");
        }
        Ok((lo, hi))
    }

    pub fn validate(&self) -> Result<()> {
        let suites: Vec<Suite> = if self.suite == Suite::All { Suite::EACH.to_vec() } else { vec![self.suite] };
        for s in suites {
            self.range(s)?;
        }
        if self.a.iter().any(|a| a == &Q::from_integer(0.into())) {
            bail!("a values must be nonzero");
        }
        Ok(())
    }
}

pub fn default_a() -> Vec<Q> {
    [1, 2, 3, 5].into_iter().map(|a| Q::from_integer(a.into())).collect()
}

struct Outcome {
    verdict: Verdict,
    detail: String,
}

fn outcome(ok: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        verdict: if ok { Verdict::Pass } else { Verdict::Fail },
        detail: detail.into(),
    }
}

type Job = Box<dyn Fn() -> Outcome + Send + Sync>;

struct Check {
    id: String,
    anchor: &'static str,
    run: Job,
}

fn check(id: String, anchor: &'static str, run: impl Fn() -> Outcome + Send + Sync + 'static) -> Check {
    Check {
        id,
        anchor,
        run: Box::new(run),
    }
}

/// Runs a suite. Configuration problems (bad ranges, unreadable or
/// malformed scripts) are errors; failed checks are records.
pub fn run_suite(config: &SuiteConfig) -> Result<Report> {
    config.validate()?;
    let start = Instant::now();
    let suites: Vec<Suite> = if config.suite == Suite::All { Suite::EACH.to_vec() } else { vec![config.suite] };
    let mut checks = Vec::new();
    for s in suites {
        let (lo, hi) = config.range(s)?;
        match s {
            Suite::RootDatum => root_datum_checks(lo, hi, &mut checks),
            Suite::Weyl => weyl_checks(lo, hi, &mut checks),
            Suite::Unramified => unramified_checks(lo, hi, &mut checks),
            Suite::Cosets => coset_checks(lo, hi, &mut checks),
            Suite::Periods => period_checks(lo, hi, config, &mut checks)?,
            Suite::All => unreachable!("expanded above"),
        }
    }
    let records = run_checks(checks);
    let a: Vec<String> = config.a.iter().map(|a| a.to_string()).collect();
    let mut header = vec![("suite".to_string(), config.suite.to_string())];
    if let Some(n) = config.n_min {
        header.push(("n_min".into(), n.to_string()));
    }
    if let Some(n) = config.n_max {
        header.push(("n_max".into(), n.to_string()));
    }
    header.push(("a".into(), a.join(",")));
    if let Some(d) = &config.scripts {
        header.push(("scripts".into(), d.display().to_string()));
    }
    let mut report = Report {
        header,
        records,
        details: Vec::new(),
        total: Duration::ZERO,
    };
    report.sort();
    report.total = start.elapsed();
    Ok(report)
}

fn run_checks(checks: Vec<Check>) -> Vec<Record> {
    checks
        .into_par_iter()
        .map(|c| {
            let t = Instant::now();
            let o = (c.run)();
            Record {
                id: c.id,
                anchor: c.anchor.to_string(),
                verdict: o.verdict,
                detail: o.detail,
                elapsed: t.elapsed(),
            }
        })
        .collect()
}

fn seed(parts: &[u64]) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(parts.iter().fold(0x6773_7069_6e00u64, |acc, &p| acc.wrapping_mul(1_000_003).wrapping_add(p)))
}

fn root_datum_checks(lo: usize, hi: usize, out: &mut Vec<Check>) {
    for n in lo..=hi {
        for (fam, dual) in [(Family::GSp, Family::GSpinOdd), (Family::GSO, Family::GSpinEven)] {
            if build_datum(fam, n).is_err() {
                continue;
            }
            out.push(check(format!("root-datum/dual/{fam:?}/n={n}"), "dual root datum", move || {
                let d = build_datum(fam, n).expect("supported");
                let e = build_datum(dual, n).expect("supported");
                let fwd = dual_datum(&d) == e;
                let back = dual_datum(&e) == d;
                outcome(fwd && back, format!("dual({fam:?})={dual:?}: {fwd}, dual({dual:?})={fam:?}: {back}"))
            }));
            out.push(check(format!("root-datum/cartan/{fam:?}/n={n}"), "Cartan matrix of the dual", move || {
                let d = build_datum(fam, n).expect("supported");
                let c = cartan_matrix(&d);
                let cd = cartan_matrix(&dual_datum(&d));
                let r = c.len();
                let ok = (0..r).all(|i| (0..r).all(|j| c[i][j] == cd[j][i])) && (0..r).all(|i| c[i][i] == 2);
                outcome(ok, format!("rank {r}, dual Cartan matrix is the transpose: {ok}"))
            }));
        }
    }
}

/// Compositions of `n` into even parts.
fn even_compositions(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for first in (2..=n).step_by(2) {
        for mut rest in even_compositions(n - first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

pub const WEYL_SAMPLES: usize = 500;

fn weyl_checks(lo: usize, hi: usize, out: &mut Vec<Check>) {
    for n in lo..=hi {
        for ty in [WeylType::B, WeylType::D] {
            if ty == WeylType::D && n < 2 {
                continue;
            }
            out.push(check(format!("weyl/faithful/{ty:?}/n={n}"), "action against monomial matrices", move || {
                let mut rng = seed(&[1, n as u64, ty as u64]);
                let mut bad = Vec::new();
                for _ in 0..WEYL_SAMPLES {
                    let w = random_element(ty, n, &mut rng);
                    let inv_ok = w.compose(&w.invert()).map(|x| x.is_identity()).unwrap_or(false);
                    if !agrees_with_matrix(&w) || !inv_ok {
                        bad.push(w.to_string());
                    }
                }
                outcome(bad.is_empty(), format!("samples={WEYL_SAMPLES} mismatches={}", bad.len()))
            }));
            if n % 2 != 0 {
                continue;
            }
            for sizes in even_compositions(n) {
                let label = sizes.iter().map(|s| s.to_string()).collect::<Vec<_>>().join("+");
                out.push(check(format!("weyl/w-m/{ty:?}/blocks={label}"), "W(M) for a Siegel Levi", move || {
                    let wm = match enumerate_w_m(&sizes, ty) {
                        Ok(x) => x,
                        Err(e) => return outcome(false, e.to_string()),
                    };
                    let r = sizes.len();
                    let want = (1..=r).product::<usize>() << r;
                    let distinct: BTreeSet<String> = wm.iter().map(|w| w.to_string()).collect();
                    let filtered = enumerate_all(ty, sizes.iter().sum())
                        .into_iter()
                        .filter(|w| maps_levi_to_standard(w, &sizes))
                        .count();
                    let ok = wm.len() == want && distinct.len() == want && filtered == want;
                    outcome(ok, format!("found={} distinct={} filter={} expected={want}", wm.len(), distinct.len(), filtered))
                }));
            }
        }
    }
}

pub const UNRAMIFIED_SAMPLES: usize = 200;

fn unramified_checks(lo: usize, hi: usize, out: &mut Vec<Check>) {
    for n in lo..=hi {
        for case in [Parity::Odd, Parity::Even] {
            out.push(check(format!("unramified/pairing/{case:?}/n={n}"), "pairing of self-dual parameters", move || {
                let mut rng = seed(&[2, n as u64]);
                let (mut split, mut nonsplit, mut none, mut bad) = (0, 0, 0, Vec::new());
                for k in 0..UNRAMIFIED_SAMPLES {
                    let s = random_selfdual(n, &mut rng);
                    let want = expected_tag(&s, case);
                    let got = pair_parameters(&s, case).ok();
                    match (&got, want) {
                        (Some(p), Some(t)) if p.tag == t => {
                            let lifted = descent_parameter(&s, case)
                                .map(|d| verify_weak_lift(&s, &d, case))
                                .unwrap_or(false);
                            if !pairing_holds(&s, p) || !lifted {
                                bad.push(k);
                            }
                            match t {
                                SplitTag::Split => split += 1,
                                SplitTag::NonSplit => nonsplit += 1,
                            }
                        }
                        (None, None) => none += 1,
                        _ => bad.push(k),
                    }
                }
                outcome(
                    bad.is_empty(),
                    format!(
                        "samples={UNRAMIFIED_SAMPLES} split={split} nonsplit={nonsplit} none={none} mismatches={bad:?}"
                    ),
                )
            }));
        }
    }
}

fn show(ws: &[gspin_core::cosets::CenteredPermutation]) -> String {
    let v: Vec<String> = ws.iter().map(|w| format!("{:?}", w.values())).collect();
    format!("[{}]", v.join(" "))
}

fn coset_checks(lo: usize, hi: usize, out: &mut Vec<Check>) {
    for n in lo..=hi {
        for case in [CosetCase::EvenP1, CosetCase::EvenP2] {
            for ell in n + 1..2 * n {
                out.push(check(format!("cosets/{}/n={n}/ell={ell}", case.name()), "no survivors above depth n", move || {
                    let mut found = Vec::new();
                    for mode in [I0Mode::General, I0Mode::WithCentre] {
                        match case_survivors(n, case, ell, mode) {
                            Ok(s) => found.extend(s),
                            Err(e) => return outcome(false, e.to_string()),
                        }
                    }
                    outcome(found.is_empty(), format!("survivors={}", show(&found)))
                }));
            }
        }
        out.push(check(format!("cosets/even-P1/n={n}/ell={n}"), "unique survivor at depth n", move || {
            let with = case_survivors(n, CosetCase::EvenP1, n, I0Mode::WithCentre).unwrap_or_default();
            let general = case_survivors(n, CosetCase::EvenP1, n, I0Mode::General).unwrap_or_default();
            let prefix = p1_survivor_prefix(n);
            let ok = with.len() == 1 && with[0].values()[..n] == prefix[..] && general.is_empty();
            outcome(ok, format!("with-centre={} general={}", show(&with), show(&general)))
        }));
        out.push(check(format!("cosets/even-P2/n={n}/ell={n}"), "survivor w1", move || {
            let s = case_survivors(n, CosetCase::EvenP2, n, I0Mode::General).unwrap_or_default();
            let w1 = explicit_survivor(n, Witness::W1).expect("n >= 2");
            outcome(s == [w1.clone()], format!("survivors={} w1={:?}", show(&s), w1.values()))
        }));
        out.push(check(format!("cosets/even-P3/n={n}/ell={n}"), "survivor w0'", move || {
            let m = 4 * n + 1;
            let s = case_survivors(n, CosetCase::EvenP3, n, I0Mode::General).unwrap_or_default();
            let w0 = explicit_survivor(n, Witness::W0Prime).expect("n >= 2");
            let is_rep = enumerate_minimal_reps(m, &CosetCase::EvenP3.shape(n), n)
                .map(|r| r.contains(&w0))
                .unwrap_or(false);
            let ok = s == [w0.clone()] && is_rep && !survives_general_position(&w0, n, I0Mode::WithCentre);
            outcome(ok, format!("survivors={} w0'={:?}", show(&s), w0.values()))
        }));
        if n == 2 {
            out.push(check("cosets/witnesses/n=2".into(), "printed witness tables", || {
                let a = explicit_survivor(2, Witness::W0Prime).expect("n = 2");
                let b = explicit_survivor(2, Witness::W1).expect("n = 2");
                let ok = a.values() == [8, 3, 1, 4, 5, 6, 9, 7, 2] && b.values() == [8, 7, 1, 4, 5, 6, 9, 3, 2];
                outcome(ok, format!("w0'={:?} w1={:?}", a.values(), b.values()))
            }));
        }
        for ell in n..2 * n {
            out.push(check(format!("cosets/odd/n={n}/ell={ell}"), "no survivors at depth >= n", move || {
                match case_survivors(n, CosetCase::Odd, ell, I0Mode::General) {
                    Ok(s) => outcome(s.is_empty(), format!("survivors={}", show(&s))),
                    Err(e) => outcome(false, e.to_string()),
                }
            }));
        }
        out.push(check(format!("cosets/odd/n={n}/ell={}", n - 1), "unique survivor at the descent depth", move || {
            let s = case_survivors(n, CosetCase::Odd, n - 1, I0Mode::General).unwrap_or_default();
            let prefix = odd_descent_prefix(n);
            let with_prefix: Vec<_> = enumerate_minimal_reps(4 * n, &CosetCase::Odd.shape(n), n - 1)
                .unwrap_or_default()
                .into_iter()
                .filter(|w| w.values()[..n - 1] == prefix[..])
                .collect();
            let ok = s.len() == 1 && with_prefix == s;
            outcome(ok, format!("survivors={} prefix={prefix:?}", show(&s)))
        }));
    }
    for (m, shape, ell) in double_coset_shapes() {
        let blocks = shape.gl_blocks.iter().map(|b| b.to_string()).collect::<Vec<_>>().join("+");
        let id = format!("cosets/double-coset/m={m}/blocks={blocks}/middle={}/ell={ell}", shape.middle);
        out.push(check(id, "minimal double coset representatives", move || {
            let fast = match enumerate_minimal_reps(m, &shape, ell) {
                Ok(x) => x,
                Err(e) => return outcome(false, e.to_string()),
            };
            let slow = brute_force_double_cosets(m, &shape, &LeviShape::q_ell(m, ell));
            outcome(fast == slow, format!("enumerated={} brute-force={}", fast.len(), slow.len()))
        }));
    }
}

/// Every `P` shape with blocks of size at most 2 and a middle block of size at
/// most 3, for `4 ≤ m ≤ 9`, paired with every depth.
pub fn double_coset_shapes() -> Vec<(usize, LeviShape, usize)> {
    fn blocks(total: usize) -> Vec<Vec<usize>> {
        if total == 0 {
            return vec![Vec::new()];
        }
        let mut out = Vec::new();
        for first in 1..=total.min(2) {
            for mut rest in blocks(total - first) {
                rest.insert(0, first);
                out.push(rest);
            }
        }
        out
    }
    let mut out = Vec::new();
    for m in 4..=9 {
        let middles: &[usize] = if m % 2 == 1 { &[1, 3] } else { &[0] };
        for &middle in middles {
            for gl_blocks in blocks((m - middle) / 2) {
                let shape = LeviShape { gl_blocks, middle };
                for ell in 1..=(m - 1) / 2 {
                    out.push((m, shape.clone(), ell));
                }
            }
        }
    }
    out
}

pub const LEVI_CONJUGATIONS: usize = 100;

fn period_checks(lo: usize, hi: usize, config: &SuiteConfig, out: &mut Vec<Check>) -> Result<()> {
    for n in lo..=hi {
        for a in &config.a {
            let a = a.clone();
            let tag = a.to_string().replace('/', "|");
            let aa = a.clone();
            out.push(check(format!("periods/h-a/n={n}/a={tag}"), "h_a carries Psi to Psi^a", move || {
                match h_a_carries_psi(n, n, &aa) {
                    Ok(ok) => outcome(ok, format!("ell={n}")),
                    Err(e) => outcome(false, e.to_string()),
                }
            }));
            let aa = a.clone();
            out.push(check(format!("periods/invt/n={n}/a={tag}"), "Invt of Psi^a and its Levi orbit", move || {
                invt_check(n, &aa)
            }));
            let aa = a.clone();
            out.push(check(format!("periods/stabilizer/n={n}/a={tag}"), "unipotent stabilizer pattern", move || {
                match stabilizer_check(&aa, n) {
                    Ok(r) => outcome(r.ok(), r.diagnostics.join("; ")),
                    Err(e) => outcome(false, e.to_string()),
                }
            }));
        }
    }
    let scripts = match &config.scripts {
        Some(dir) => load_scripts(dir)?,
        None => {
            let ns: Vec<usize> = (lo..=hi).collect();
            let a: Vec<i64> = config
                .a
                .iter()
                .filter(|a| is_integral(a))
                .filter_map(|a| a.to_integer().try_into().ok())
                .collect();
            appendix_scripts(&ns, &a)
        }
    };
    for s in scripts {
        out.push(check(format!("periods/script/{}", s.name), "derivation replay", move || {
            script_outcome(&replay(&s))
        }));
    }
    Ok(())
}

fn invt_check(n: usize, a: &Q) -> Outcome {
    let m = 4 * n + 1;
    let r = PeriodRef::new("even.PsiA", &[("ell", Q::from_integer((n as i64).into())), ("a", a.clone())]);
    let p = match make_standard_period(&r, m) {
        Ok(p) => p,
        Err(e) => return outcome(false, e.to_string()),
    };
    let want = match square_class_of(a) {
        Ok(c) => Invt::Class(c),
        Err(e) => return outcome(false, e.to_string()),
    };
    let got = invt(&p);
    if got.as_ref() != Ok(&want) || general_position(&p) != Ok(true) {
        return outcome(false, format!("invt={got:?} want={want}"));
    }
    let mut rng = seed(&[3, n as u64]);
    for k in 0..LEVI_CONJUGATIONS {
        let g = random_levi_element(m, n, 8, &mut rng);
        match conjugate_period(&g, &p).and_then(|x| invt(&x)) {
            Ok(c) if c == want => {}
            other => return outcome(false, format!("conjugation {k}: {other:?}")),
        }
    }
    outcome(true, format!("invt={want} conjugations={LEVI_CONJUGATIONS}"))
}

fn script_outcome(r: &ReplayReport) -> Outcome {
    let verdict = match (r.passed(), r.axioms.is_empty()) {
        (false, _) => Verdict::Fail,
        (true, true) => Verdict::Pass,
        (true, false) => Verdict::Axiom,
    };
    let mut detail = format!(
        "steps={} failed={} reached_goal={} claim={} claim_holds={} axioms={}",
        r.steps.len(),
        r.failed_steps(),
        r.reached_goal,
        r.claim,
        r.claim_holds,
        r.axioms.len()
    );
    if let Some(s) = r.steps.iter().find(|s| s.verdict == gspin_core::periods::Verdict::Fail) {
        detail.push_str(&format!(" first_failure=step {} {}: {}", s.index, s.kind, s.detail));
    }
    Outcome { verdict, detail }
}

/// The script files of a directory in name order, or a single file.
pub fn script_paths(path: &Path) -> Result<Vec<PathBuf>> {
    if !path.is_dir() {
        return Ok(vec![path.to_path_buf()]);
    }
    let mut paths = Vec::new();
    for e in std::fs::read_dir(path).with_context(|| format!("reading {}", path.display()))? {
        let p = e?.path();
        if p.is_file() && p.extension().is_some_and(|x| x == "txt") {
            paths.push(p);
        }
    }
    paths.sort();
    Ok(paths)
}

pub fn load_scripts(path: &Path) -> Result<Vec<DerivationScript>> {
    script_paths(path)?
        .iter()
        .map(|p| {
            let text = std::fs::read_to_string(p).with_context(|| format!("reading {}", p.display()))?;
            parse_script(&text).with_context(|| format!("parsing {}", p.display()))
        })
        .collect()
}

/// Replays every script under `path`: one record per script, then every
/// step record in script order.
pub fn run_replay(path: &Path) -> Result<Report> {
    let start = Instant::now();
    let scripts = load_scripts(path)?;
    let results: Vec<(Record, Vec<String>)> = scripts
        .into_par_iter()
        .map(|s| {
            let t = Instant::now();
            let r = replay(&s);
            let o = script_outcome(&r);
            let rec = Record {
                id: s.name.clone(),
                anchor: "derivation replay".into(),
                verdict: o.verdict,
                detail: o.detail,
                elapsed: t.elapsed(),
            };
            (rec, r.to_records())
        })
        .collect();
    let mut report = Report {
        header: vec![("replay".into(), path.display().to_string())],
        ..Report::default()
    };
    for (rec, lines) in results {
        report.records.push(rec);
        report.details.extend(lines);
    }
    report.sort();
    report.total = start.elapsed();
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_names() {
        for s in Suite::EACH.into_iter().chain([Suite::All]) {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        }
        assert!("web".parse::<Suite>().is_err());
    }

    #[test]
    fn ranges_are_validated() {
        let mut c = SuiteConfig::new(Suite::Periods);
        c.n_max = Some(5);
        assert!(run_suite(&c).is_err());
        let mut c = SuiteConfig::new(Suite::Cosets);
        c.n_min = Some(3);
        c.n_max = Some(2);
        assert!(c.validate().is_err());
    }

    #[test]
    fn even_block_shapes() {
        assert_eq!(even_compositions(4), vec![vec![2, 2], vec![4]]);
        assert_eq!(even_compositions(3).len(), 0);
    }

    #[test]
    fn root_datum_suite() {
        let r = run_suite(&SuiteConfig::new(Suite::RootDatum)).unwrap();
        assert_eq!(r.failures(), 0, "{}", r.render(false));
        assert!(r.get("root-datum/dual/GSO/n=6").is_some());
    }
}
