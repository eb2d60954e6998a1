//! Derivation scripts: a line-oriented record of conjugations, exchanges,
//! Fourier expansions and restrictions, and the replay engine that certifies
//! each step.
//!
//! ```text
//! name: odd_u1_divides_u2_n2
//! m: 8
//! start: odd.U1
//! goal: odd.U2
//! claim: divides
//! SWAP odd.U4
//! CONJ transpose[1]
//! FOURIER odd.U2p GENS elem 3 2 1; elem 3 4 1
//! RESTRICT U{(1,2)=0} PSI{(1,3):1}
//! AXIOM "citation" TO odd.U2
//! ```
//!
//! Relation bookkeeping follows the unipotent-period vocabulary: `A | B`
//! means `B ∈ ⟨A⟩`. Replay tracks whether `current ∈ ⟨start⟩` (forward) and
//! `start ∈ ⟨current⟩` (backward), together with the extension families a
//! non-transitive Fourier step leaves behind in each direction.

use super::algebra::{conjugate_period, Ambient, CharacterFunctional, NilSubalgebra, UniPeriod};
use super::calculus::{check_swap, fourier_extensions, Transitivity};
use super::standard::{make_standard_period, PeriodRef};
use super::PeriodError;
use crate::arith::{parse_q, Field, QuadElem, Q};
use crate::similitude::{diagonal, h_a_matrix, monomial, so_elementary, SimilitudeMatrix};
use num::{One, Zero};
use std::fmt;

/// A matrix named in a script.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MatrixSpec {
    /// `perm[...] signs[...]`: sends `e_i` to `signs[i]·e_{perm[i]}`.
    Perm { perm: Vec<usize>, signs: Vec<i64> },
    /// `transpose[i,...]`: the permutation matrix swapping `i, i+1` and the
    /// mirror pair `m−i, m+1−i`, for each listed `i`, applied left to right.
    Transpose(Vec<usize>),
    /// `elem i j a`: `exp(a·e′_{ij})`.
    Elem { i: usize, j: usize, a: Q },
    /// `h_a n ell a`.
    Ha { n: usize, ell: usize, a: Q },
    /// `diag[t1,...,tm]`.
    Diag(Vec<Q>),
    /// `dagger`: the transposition of `2n, 2n+1` in `O_{4n}`.
    Dagger,
}

/// A matrix built from a [`MatrixSpec`].
#[derive(Clone, Debug)]
pub enum BuiltMatrix {
    Rational(SimilitudeMatrix<Q>),
    Quadratic(SimilitudeMatrix<QuadElem>),
}

impl BuiltMatrix {
    /// Whether `det g = −λ^{m/2}`, i.e. the element lies outside the
    /// identity component of the similitude group in even size.
    pub fn reverses_orientation(&self) -> bool {
        fn rev<F: Field>(g: &SimilitudeMatrix<F>) -> bool {
            let m = g.size();
            if m % 2 == 1 {
                return false;
            }
            let mut p = F::one();
            for _ in 0..m / 2 {
                p = p * g.lambda().clone();
            }
            g.matrix().det() == -p
        }
        match self {
            BuiltMatrix::Rational(g) => rev(g),
            BuiltMatrix::Quadratic(g) => rev(g),
        }
    }

    fn conjugate(&self, p: &UniPeriod) -> Result<UniPeriod, PeriodError> {
        match self {
            BuiltMatrix::Rational(g) => conjugate_period(g, p),
            BuiltMatrix::Quadratic(g) => conjugate_period(g, p),
        }
    }
}

fn parse_list<T>(s: &str, f: impl Fn(&str) -> Option<T>) -> Option<Vec<T>> {
    let inner = s.trim().strip_prefix('[')?.strip_suffix(']')?;
    if inner.trim().is_empty() {
        return Some(Vec::new());
    }
    inner.split(',').map(|x| f(x.trim())).collect()
}

fn join<T: fmt::Display>(xs: &[T]) -> String {
    xs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

impl fmt::Display for MatrixSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MatrixSpec::Perm { perm, signs } => write!(f, "perm[{}] signs[{}]", join(perm), join(signs)),
            MatrixSpec::Transpose(v) => write!(f, "transpose[{}]", join(v)),
            MatrixSpec::Elem { i, j, a } => write!(f, "elem {i} {j} {a}"),
            MatrixSpec::Ha { n, ell, a } => write!(f, "h_a {n} {ell} {a}"),
            MatrixSpec::Diag(v) => write!(f, "diag[{}]", join(v)),
            MatrixSpec::Dagger => write!(f, "dagger"),
        }
    }
}

impl MatrixSpec {
    pub fn parse(s: &str) -> Result<Self, String> {
        let s = s.trim();
        let bad = || format!("malformed matrix spec {s:?}");
        let words: Vec<&str> = s.split_whitespace().collect();
        let usize_of = |w: &str| w.parse::<usize>().ok();
        match words.first().copied() {
            Some("elem") | Some("h_a") if words.len() == 4 => {
                let x = usize_of(words[1]).ok_or_else(bad)?;
                let y = usize_of(words[2]).ok_or_else(bad)?;
                let a = parse_q(words[3]).ok_or_else(bad)?;
                Ok(if words[0] == "elem" {
                    MatrixSpec::Elem { i: x, j: y, a }
                } else {
                    MatrixSpec::Ha { n: x, ell: y, a }
                })
            }
            Some("dagger") if words.len() == 1 => Ok(MatrixSpec::Dagger),
            _ => {
                if let Some(rest) = s.strip_prefix("transpose") {
                    return parse_list(rest, usize_of).map(MatrixSpec::Transpose).ok_or_else(bad);
                }
                if let Some(rest) = s.strip_prefix("diag") {
                    return parse_list(rest, parse_q).map(MatrixSpec::Diag).ok_or_else(bad);
                }
                if let Some(rest) = s.strip_prefix("perm") {
                    let (p, sg) = match rest.find("signs") {
                        Some(k) => (&rest[..k], Some(&rest[k + 5..])),
                        None => (rest, None),
                    };
                    let perm = parse_list(p, usize_of).ok_or_else(bad)?;
                    let signs = match sg {
                        Some(sg) => parse_list(sg, |w| w.parse::<i64>().ok()).ok_or_else(bad)?,
                        None => vec![1; perm.len()],
                    };
                    return Ok(MatrixSpec::Perm { perm, signs });
                }
                Err(bad())
            }
        }
    }

    pub fn build(&self, m: usize) -> Result<BuiltMatrix, PeriodError> {
        let size_check = |k: usize| {
            if k != m {
                Err(PeriodError::Precondition(format!("{self}: size {k} differs from m={m}")))
            } else {
                Ok(())
            }
        };
        Ok(match self {
            MatrixSpec::Perm { perm, signs } => {
                size_check(perm.len())?;
                BuiltMatrix::Rational(monomial(perm, signs)?)
            }
            MatrixSpec::Transpose(list) => {
                let mut perm: Vec<usize> = (1..=m).collect();
                for &i in list {
                    if i == 0 || i >= m {
                        return Err(PeriodError::Precondition(format!("{self}: index {i} out of range")));
                    }
                    let mirror = m - i;
                    if m % 2 == 1 && (i == m / 2 || i == m / 2 + 1) {
                        return Err(PeriodError::Precondition(format!(
                            "{self}: ({i},{}) moves the middle index",
                            i + 1
                        )));
                    }
                    let mut swaps = vec![i];
                    if mirror != i {
                        swaps.push(mirror);
                    }
                    for s in swaps {
                        // e_s ↔ e_{s+1} after the swaps already applied
                        for v in perm.iter_mut() {
                            if *v == s {
                                *v = s + 1;
                            } else if *v == s + 1 {
                                *v = s;
                            }
                        }
                    }
                }
                BuiltMatrix::Rational(monomial(&perm, &vec![1; m])?)
            }
            MatrixSpec::Elem { i, j, a } => BuiltMatrix::Rational(so_elementary(m, *i, *j, a)?),
            MatrixSpec::Ha { n, ell, a } => {
                size_check(4 * n + 1)?;
                BuiltMatrix::Quadratic(h_a_matrix(*n, *ell, a)?)
            }
            MatrixSpec::Diag(v) => {
                size_check(v.len())?;
                BuiltMatrix::Rational(diagonal(v)?)
            }
            MatrixSpec::Dagger => {
                if !m.is_multiple_of(4) {
                    return Err(PeriodError::Precondition(format!("dagger needs m divisible by 4, got {m}")));
                }
                return MatrixSpec::Transpose(vec![m / 2]).build(m);
            }
        })
    }
}

/// One linear condition of an inline algebra: `u_{ij} = Σ c·u_{kl}`, or
/// `u_{ij} = 0` when `rhs` is empty.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InlineRelation {
    pub coord: (usize, usize),
    pub rhs: Vec<(Q, (usize, usize))>,
}

/// A period named in a script.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PeriodSpec {
    Named(PeriodRef),
    /// `U{...} PSI{...}`; `U{}` is the full strictly upper algebra.
    Inline { relations: Vec<InlineRelation>, psi: Vec<((usize, usize), Q)> },
}

fn split_top(s: &str) -> Vec<&str> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (k, c) in s.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if depth == 0 => {
                out.push(&s[start..k]);
                start = k + 1;
            }
            _ => {}
        }
    }
    out.push(&s[start..]);
    out.into_iter().map(str::trim).filter(|x| !x.is_empty()).collect()
}

fn parse_coord(s: &str) -> Option<(usize, usize)> {
    let inner = s.trim().strip_prefix('(')?.strip_suffix(')')?;
    let (a, b) = inner.split_once(',')?;
    Some((a.trim().parse().ok()?, b.trim().parse().ok()?))
}

impl PeriodSpec {
    pub fn parse(s: &str) -> Result<Self, String> {
        let s = s.trim();
        let bad = || format!("malformed period {s:?}");
        if let Some(rest) = s.strip_prefix("U{") {
            let close = rest.find('}').ok_or_else(bad)?;
            let body = &rest[..close];
            let tail = rest[close + 1..].trim();
            let psi_body = tail
                .strip_prefix("PSI{")
                .and_then(|t| t.strip_suffix('}'))
                .ok_or_else(bad)?;
            let mut relations = Vec::new();
            for part in split_top(body) {
                let (lhs, rhs) = part.split_once('=').ok_or_else(bad)?;
                let coord = parse_coord(lhs).ok_or_else(bad)?;
                let rhs = rhs.trim();
                let mut terms = Vec::new();
                if rhs != "0" {
                    for t in rhs.split('+') {
                        let t = t.trim();
                        terms.push(match t.split_once('*') {
                            Some((c, kl)) => (parse_q(c.trim()).ok_or_else(bad)?, parse_coord(kl).ok_or_else(bad)?),
                            None => (Q::one(), parse_coord(t).ok_or_else(bad)?),
                        });
                    }
                }
                relations.push(InlineRelation { coord, rhs: terms });
            }
            let mut psi = Vec::new();
            for part in split_top(psi_body) {
                let (c, v) = part.rsplit_once(':').ok_or_else(bad)?;
                psi.push((parse_coord(c).ok_or_else(bad)?, parse_q(v.trim()).ok_or_else(bad)?));
            }
            return Ok(PeriodSpec::Inline { relations, psi });
        }
        s.parse::<PeriodRef>().map(PeriodSpec::Named).map_err(|e| e.to_string())
    }

    /// The inline spec of a period, with the relations read off a basis of
    /// the annihilator of its algebra.
    pub fn inline_of(p: &UniPeriod) -> Self {
        let amb = p.algebra().ambient();
        let coords = amb.coords();
        let relations = p
            .algebra()
            .space()
            .equations()
            .iter()
            .filter_map(|e| {
                let first = e.iter().position(|x| !x.is_zero())?;
                let rhs = e
                    .iter()
                    .enumerate()
                    .skip(first + 1)
                    .filter(|(_, x)| !x.is_zero())
                    .map(|(k, x)| (-x / &e[first], coords[k]))
                    .collect();
                Some(InlineRelation { coord: coords[first], rhs })
            })
            .collect();
        let psi = coords
            .iter()
            .zip(p.character().coeffs())
            .filter(|(_, c)| !c.is_zero())
            .map(|(&k, c)| (k, c.clone()))
            .collect();
        PeriodSpec::Inline { relations, psi }
    }

    pub fn resolve(&self, m: usize) -> Result<UniPeriod, PeriodError> {
        match self {
            PeriodSpec::Named(r) => make_standard_period(r, m),
            PeriodSpec::Inline { relations, psi } => {
                let amb = Ambient::get(m);
                let mut eqs = Vec::new();
                for r in relations {
                    let mut terms = vec![(r.coord, Q::one())];
                    terms.extend(r.rhs.iter().map(|(c, kl)| (*kl, -c.clone())));
                    eqs.push(amb.functional(&terms)?);
                }
                let alg = NilSubalgebra::solutions(m, &eqs)?;
                UniPeriod::new(alg, &CharacterFunctional::from_terms(m, psi)?)
            }
        }
    }
}

impl fmt::Display for PeriodSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PeriodSpec::Named(r) => write!(f, "{r}"),
            PeriodSpec::Inline { relations, psi } => {
                let rs: Vec<String> = relations
                    .iter()
                    .map(|r| {
                        let (i, j) = r.coord;
                        if r.rhs.is_empty() {
                            return format!("({i},{j})=0");
                        }
                        let ts: Vec<String> = r.rhs.iter().map(|(c, (k, l))| format!("{c}*({k},{l})")).collect();
                        format!("({i},{j})={}", ts.join("+"))
                    })
                    .collect();
                let ps: Vec<String> = psi.iter().map(|((i, j), c)| format!("({i},{j}):{c}")).collect();
                write!(f, "U{{{}}} PSI{{{}}}", rs.join(","), ps.join(","))
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Step {
    Conj(MatrixSpec),
    Swap(PeriodSpec),
    Fourier { target: PeriodSpec, gens: Vec<MatrixSpec> },
    Restrict { target: PeriodSpec, gens: Vec<MatrixSpec> },
    Axiom { citation: String, target: Option<PeriodSpec> },
}

impl Step {
    pub fn keyword(&self) -> &'static str {
        match self {
            Step::Conj(_) => "CONJ",
            Step::Swap(_) => "SWAP",
            Step::Fourier { .. } => "FOURIER",
            Step::Restrict { .. } => "RESTRICT",
            Step::Axiom { .. } => "AXIOM",
        }
    }
}

fn gens_suffix(gens: &[MatrixSpec]) -> String {
    if gens.is_empty() {
        String::new()
    } else {
        let gs: Vec<String> = gens.iter().map(|g| g.to_string()).collect();
        format!(" GENS {}", gs.join("; "))
    }
}

impl fmt::Display for Step {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Step::Conj(g) => write!(f, "CONJ {g}"),
            Step::Swap(p) => write!(f, "SWAP {p}"),
            Step::Fourier { target, gens } => write!(f, "FOURIER {target}{}", gens_suffix(gens)),
            Step::Restrict { target, gens } => write!(f, "RESTRICT {target}{}", gens_suffix(gens)),
            Step::Axiom { citation, target } => {
                write!(f, "AXIOM \"{citation}\"")?;
                if let Some(t) = target {
                    write!(f, " TO {t}")?;
                }
                Ok(())
            }
        }
    }
}

/// The relation a script asserts between its start and goal.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Claim {
    /// `start | goal`.
    Divides,
    /// `goal | start`.
    DividedBy,
    /// `goal ∈ ⟨start, residual families⟩`.
    Spans,
    /// `start ∈ ⟨goal, residual families⟩`.
    Spanned,
    /// `start ∼ goal`.
    Equivalent,
}

impl Claim {
    fn parse(s: &str) -> Option<Claim> {
        Some(match s {
            "divides" => Claim::Divides,
            "divided-by" => Claim::DividedBy,
            "spans" => Claim::Spans,
            "spanned" => Claim::Spanned,
            "equivalent" => Claim::Equivalent,
            _ => return None,
        })
    }
}

impl fmt::Display for Claim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Claim::Divides => "divides",
            Claim::DividedBy => "divided-by",
            Claim::Spans => "spans",
            Claim::Spanned => "spanned",
            Claim::Equivalent => "equivalent",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DerivationScript {
    pub name: String,
    pub m: usize,
    pub start: PeriodSpec,
    pub goal: PeriodSpec,
    pub claim: Claim,
    /// Expected number of orientation-reversing conjugations, mod 2: the
    /// reached period is related to `†^parity(start)`.
    pub parity: u8,
    pub comments: Vec<String>,
    pub steps: Vec<Step>,
}

fn parse_err(line: usize, msg: impl Into<String>) -> PeriodError {
    PeriodError::Parse { line, msg: msg.into() }
}

/// Splits `text` at the first ` KEY ` keyword, if present.
fn split_keyword<'a>(text: &'a str, key: &str) -> (&'a str, Option<&'a str>) {
    let pat = format!(" {key} ");
    match text.find(&pat) {
        Some(k) => (&text[..k], Some(&text[k + pat.len()..])),
        None => (text, None),
    }
}

fn parse_gens(s: Option<&str>) -> Result<Vec<MatrixSpec>, String> {
    match s {
        None => Ok(Vec::new()),
        Some(s) => s.split(';').map(MatrixSpec::parse).collect(),
    }
}

pub fn parse_script(text: &str) -> Result<DerivationScript, PeriodError> {
    let mut name = None;
    let mut m = None;
    let mut start = None;
    let mut goal = None;
    let mut claim = None;
    let mut parity = 0u8;
    let mut comments = Vec::new();
    let mut steps = Vec::new();
    for (k, raw) in text.lines().enumerate() {
        let line_no = k + 1;
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        if let Some(c) = line.strip_prefix('#') {
            comments.push(c.trim().to_string());
            continue;
        }
        let (word, rest) = match line.split_once(char::is_whitespace) {
            Some((w, r)) => (w, r.trim()),
            None => (line, ""),
        };
        let perr = |msg: String| parse_err(line_no, msg);
        if let Some(key) = word.strip_suffix(':') {
            if !steps.is_empty() {
                return Err(perr(format!("header {key:?} after the first step")));
            }
            match key {
                "name" => name = Some(rest.to_string()),
                "m" => m = Some(rest.parse::<usize>().map_err(|_| perr(format!("bad size {rest:?}")))?),
                "start" => start = Some(PeriodSpec::parse(rest).map_err(perr)?),
                "goal" => goal = Some(PeriodSpec::parse(rest).map_err(perr)?),
                "claim" => claim = Some(Claim::parse(rest).ok_or_else(|| perr(format!("unknown claim {rest:?}")))?),
                "parity" => {
                    parity = match rest {
                        "0" => 0,
                        "1" => 1,
                        _ => return Err(perr(format!("parity must be 0 or 1, got {rest:?}"))),
                    }
                }
                _ => return Err(perr(format!("unknown header {key:?}"))),
            }
            continue;
        }
        let step = match word {
            "CONJ" => Step::Conj(MatrixSpec::parse(rest).map_err(perr)?),
            "SWAP" => Step::Swap(PeriodSpec::parse(rest).map_err(perr)?),
            "FOURIER" | "RESTRICT" => {
                let padded = format!("{rest} ");
                let (p, g) = split_keyword(&padded, "GENS");
                let target = PeriodSpec::parse(p).map_err(perr)?;
                let gens = parse_gens(g.map(str::trim)).map_err(perr)?;
                if word == "FOURIER" {
                    Step::Fourier { target, gens }
                } else {
                    Step::Restrict { target, gens }
                }
            }
            "AXIOM" => {
                let body = rest
                    .strip_prefix('"')
                    .ok_or_else(|| perr("AXIOM needs a quoted citation".into()))?;
                let close = body.find('"').ok_or_else(|| perr("unterminated citation".into()))?;
                let citation = body[..close].to_string();
                let tail = body[close + 1..].trim();
                let target = if tail.is_empty() {
                    None
                } else {
                    let t = tail
                        .strip_prefix("TO ")
                        .ok_or_else(|| perr(format!("unexpected text after citation: {tail:?}")))?;
                    Some(PeriodSpec::parse(t).map_err(perr)?)
                };
                Step::Axiom { citation, target }
            }
            other => return Err(perr(format!("unknown step keyword {other:?}"))),
        };
        steps.push(step);
    }
    let end = text.lines().count() + 1;
    let missing = |h: &str| parse_err(end, format!("missing header {h:?}"));
    Ok(DerivationScript {
        name: name.ok_or_else(|| missing("name"))?,
        m: m.ok_or_else(|| missing("m"))?,
        start: start.ok_or_else(|| missing("start"))?,
        goal: goal.ok_or_else(|| missing("goal"))?,
        claim: claim.unwrap_or(Claim::Equivalent),
        parity,
        comments,
        steps,
    })
}

impl fmt::Display for DerivationScript {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "name: {}", self.name)?;
        writeln!(f, "m: {}", self.m)?;
        writeln!(f, "start: {}", self.start)?;
        writeln!(f, "goal: {}", self.goal)?;
        writeln!(f, "claim: {}", self.claim)?;
        if self.parity != 0 {
            writeln!(f, "parity: {}", self.parity)?;
        }
        for c in &self.comments {
            writeln!(f, "# {c}")?;
        }
        for s in &self.steps {
            writeln!(f, "{s}")?;
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail,
    Axiom,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
            Verdict::Axiom => "axiom",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StepRecord {
    pub index: usize,
    pub kind: &'static str,
    pub verdict: Verdict,
    pub detail: String,
}

/// Extensions left over by a non-transitive Fourier step.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Residual {
    pub step: usize,
    /// Dimension of the space of extensions.
    pub extensions: usize,
    /// Codimension of the span of the generator tangents in it.
    pub codim: usize,
    /// The smaller period whose extensions these are.
    pub small: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReplayReport {
    pub name: String,
    pub m: usize,
    pub steps: Vec<StepRecord>,
    pub reached_goal: bool,
    pub parity: u8,
    pub forward: bool,
    pub backward: bool,
    pub forward_residuals: Vec<Residual>,
    pub backward_residuals: Vec<Residual>,
    pub axioms: Vec<String>,
    pub claim: Claim,
    pub claim_holds: bool,
    pub final_period: Option<String>,
}

impl ReplayReport {
    pub fn failed_steps(&self) -> usize {
        self.steps.iter().filter(|s| s.verdict == Verdict::Fail).count()
    }

    /// Zero failed steps, goal reached and claim established.
    pub fn passed(&self) -> bool {
        self.failed_steps() == 0 && self.reached_goal && self.claim_holds
    }

    /// Key-value rendering, one record per line in a fixed order.
    pub fn to_records(&self) -> Vec<String> {
        let mut out = Vec::new();
        let q = |s: &str| format!("{s:?}");
        for s in &self.steps {
            out.push(format!(
                "script={} step={} kind={} verdict={} detail={}",
                self.name,
                s.index,
                s.kind,
                s.verdict,
                q(&s.detail)
            ));
        }
        for (dir, list) in [("forward", &self.forward_residuals), ("backward", &self.backward_residuals)] {
            for r in list {
                out.push(format!(
                    "script={} residual direction={dir} step={} extensions={} codim={} small={}",
                    self.name,
                    r.step,
                    r.extensions,
                    r.codim,
                    q(&r.small)
                ));
            }
        }
        out.push(format!(
            "script={} m={} reached_goal={} parity={} forward={} backward={} claim={} claim_holds={} axioms={} verdict={}",
            self.name,
            self.m,
            self.reached_goal,
            self.parity,
            self.forward,
            self.backward,
            self.claim,
            self.claim_holds,
            self.axioms.len(),
            if self.passed() { "pass" } else { "fail" }
        ));
        out
    }
}

struct State {
    current: UniPeriod,
    forward: bool,
    backward: bool,
    parity: u8,
    fwd_res: Vec<Residual>,
    bwd_res: Vec<Residual>,
    axioms: Vec<String>,
}

fn build_gens(gens: &[MatrixSpec], m: usize) -> Result<Vec<SimilitudeMatrix<Q>>, PeriodError> {
    gens.iter()
        .map(|g| match g.build(m)? {
            BuiltMatrix::Rational(x) => Ok(x),
            BuiltMatrix::Quadratic(_) => {
                Err(PeriodError::Precondition(format!("generator {g} is not rational")))
            }
        })
        .collect()
}

/// Fourier data for `small ⊂ big` where `ext` is the named extension.
fn extension_step(
    small: &UniPeriod,
    ext: &UniPeriod,
    gens: &[MatrixSpec],
    index: usize,
) -> Result<(Transitivity, Residual, String), PeriodError> {
    let m = small.m();
    let g = build_gens(gens, m)?;
    let fam = fourier_extensions(small, ext.algebra(), &g)?;
    if fam.coordinates_of(ext).is_none() {
        return Err(PeriodError::Fourier(format!(
            "{} does not restrict to the smaller character",
            ext.character()
        )));
    }
    let codim = match fam.verdict {
        Transitivity::Transitive => 0,
        Transitivity::Partial { residual } => residual,
        Transitivity::Unknown => fam.dim(),
    };
    let verdict = match fam.verdict {
        Transitivity::Transitive => "transitive".to_string(),
        Transitivity::Partial { residual } => format!("partial(residual {residual})"),
        Transitivity::Unknown => "unknown".to_string(),
    };
    let detail = format!(
        "extension dim {} ({} -> {}), {} generators, orbits {}",
        fam.dim(),
        small.dim(),
        ext.dim(),
        gens.len(),
        verdict
    );
    let res = Residual { step: index, extensions: fam.dim(), codim, small: small.describe() };
    Ok((fam.verdict, res, detail))
}

fn run_step(st: &mut State, step: &Step, index: usize, m: usize) -> Result<(Verdict, String), PeriodError> {
    match step {
        Step::Conj(spec) => {
            let g = spec.build(m)?;
            let next = g.conjugate(&st.current)?;
            let rev = g.reverses_orientation();
            if rev {
                st.parity ^= 1;
            }
            st.current = next;
            Ok((Verdict::Pass, format!("dim {}{}", st.current.dim(), if rev { ", det -1" } else { "" })))
        }
        Step::Swap(target) => {
            let t = target.resolve(m)?;
            let cert = check_swap(&st.current, t.algebra(), t.character())?;
            st.current = cert.swapped;
            Ok((
                Verdict::Pass,
                format!(
                    "dims u1={} u2={} u3={}, pairing rank {}",
                    cert.dim_u1, cert.dim_u2, cert.dim_u3, cert.pairing_rank
                ),
            ))
        }
        Step::Fourier { target, gens } => {
            let t = target.resolve(m)?;
            let (verdict, res, detail) = extension_step(&st.current, &t, gens, index)?;
            if verdict != Transitivity::Transitive && res.extensions > 0 {
                st.bwd_res.push(res);
            }
            st.current = t;
            Ok((Verdict::Pass, detail))
        }
        Step::Restrict { target, gens } => {
            let t = target.resolve(m)?;
            if !t.is_restriction_of(&st.current) {
                return Err(PeriodError::Precondition(
                    "target is not a restriction of the current period".into(),
                ));
            }
            let big = st.current.algebra();
            if !big.derived().is_subspace_of(t.algebra().space()) {
                // No Fourier expansion along a non-abelian quotient: only the
                // restriction direction is recorded.
                let codim = big.dim() - t.dim();
                st.fwd_res.push(Residual { step: index, extensions: codim, codim, small: t.describe() });
                let detail = format!("restriction only ({} -> {}), quotient not abelian", big.dim(), t.dim());
                st.current = t;
                return Ok((Verdict::Pass, detail));
            }
            let (verdict, res, detail) = extension_step(&t, &st.current, gens, index)?;
            if verdict != Transitivity::Transitive && res.extensions > 0 {
                st.fwd_res.push(res);
            }
            st.current = t;
            Ok((Verdict::Pass, detail))
        }
        Step::Axiom { citation, target } => {
            st.axioms.push(citation.clone());
            if let Some(t) = target {
                st.current = t.resolve(m)?;
            }
            Ok((Verdict::Axiom, citation.clone()))
        }
    }
}

/// Replays `script`, stopping at the first failing step.
pub fn replay(script: &DerivationScript) -> ReplayReport {
    let m = script.m;
    let mut report = ReplayReport {
        name: script.name.clone(),
        m,
        steps: Vec::new(),
        reached_goal: false,
        parity: 0,
        forward: false,
        backward: false,
        forward_residuals: Vec::new(),
        backward_residuals: Vec::new(),
        axioms: Vec::new(),
        claim: script.claim,
        claim_holds: false,
        final_period: None,
    };
    let start = match script.start.resolve(m) {
        Ok(p) => p,
        Err(e) => {
            report.steps.push(StepRecord { index: 0, kind: "START", verdict: Verdict::Fail, detail: e.to_string() });
            return report;
        }
    };
    let goal = match script.goal.resolve(m) {
        Ok(p) => p,
        Err(e) => {
            report.steps.push(StepRecord { index: 0, kind: "GOAL", verdict: Verdict::Fail, detail: e.to_string() });
            return report;
        }
    };
    let mut st = State {
        current: start,
        forward: true,
        backward: true,
        parity: 0,
        fwd_res: Vec::new(),
        bwd_res: Vec::new(),
        axioms: Vec::new(),
    };
    for (k, step) in script.steps.iter().enumerate() {
        let index = k + 1;
        match run_step(&mut st, step, index, m) {
            Ok((verdict, detail)) => report.steps.push(StepRecord { index, kind: step.keyword(), verdict, detail }),
            Err(e) => {
                report.steps.push(StepRecord {
                    index,
                    kind: step.keyword(),
                    verdict: Verdict::Fail,
                    detail: e.to_string(),
                });
                report.final_period = Some(st.current.describe());
                return report;
            }
        }
    }
    report.reached_goal = st.current == goal && st.parity == script.parity;
    if !report.reached_goal {
        let why = if st.current != goal {
            format!("reached {} instead of the goal {}", st.current.describe(), goal.describe())
        } else {
            format!("dagger parity {} but the script declares {}", st.parity, script.parity)
        };
        report.steps.push(StepRecord { index: script.steps.len() + 1, kind: "GOAL", verdict: Verdict::Fail, detail: why });
    }
    report.parity = st.parity;
    report.forward = st.forward;
    report.backward = st.backward;
    let no_fwd = st.fwd_res.is_empty();
    let no_bwd = st.bwd_res.is_empty();
    report.claim_holds = report.reached_goal
        && match script.claim {
            Claim::Divides => st.forward && no_fwd,
            Claim::Spans => st.forward,
            Claim::DividedBy => st.backward && no_bwd,
            Claim::Spanned => st.backward,
            Claim::Equivalent => st.forward && st.backward && no_fwd && no_bwd,
        };
    report.forward_residuals = st.fwd_res;
    report.backward_residuals = st.bwd_res;
    report.axioms = st.axioms;
    report.final_period = Some(st.current.describe());
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn axiom_only_script() {
        let s = parse_script("name: t\nm: 9\nstart: even.U2[a=0]\ngoal: even.U2[a=0]\nclaim: equivalent\nAXIOM \"span relation\"\n")
            .unwrap();
        assert_eq!(s.steps.len(), 1);
        let r = replay(&s);
        assert!(r.passed(), "{:?}", r.to_records());
        assert_eq!(r.steps[0].verdict, Verdict::Axiom);
    }

    #[test]
    fn unknown_keyword_is_named() {
        let e = parse_script("name: t\nm: 8\nstart: odd.U3\ngoal: odd.U3\nclaim: divides\nTWIST odd.U2\n").unwrap_err();
        assert_eq!(e, PeriodError::Parse { line: 6, msg: "unknown step keyword \"TWIST\"".into() });
    }

    #[test]
    fn round_trip() {
        let text = "name: t\nm: 8\nstart: U{(1,2)=0,(2,4)=-1/2*(2,5)} PSI{(1,3):1}\ngoal: odd.U3\nclaim: spanned\nparity: 1\n# note\n\
                    CONJ perm[8,7,6,5,4,3,2,1] signs[1,1,1,1,1,1,1,1]\nCONJ transpose[1,3]\nCONJ elem 1 2 3/4\nCONJ dagger\n\
                    FOURIER odd.U7a[k=3,a=2] GENS elem 4 1 1; diag[1,1,1,1,1,1,1,1]\nRESTRICT odd.U2\nSWAP odd.U4\nAXIOM \"x\" TO odd.U2\n";
        let s = parse_script(text).unwrap();
        let again = parse_script(&s.to_string()).unwrap();
        assert_eq!(s, again);
    }

    #[test]
    fn swap_to_disjoint_algebra_fails() {
        let s = parse_script(
            "name: t\nm: 8\nstart: odd.U1\ngoal: odd.U1\nclaim: equivalent\nSWAP U{(1,2)=0,(1,3)=0,(1,4)=0,(1,5)=0,(1,6)=0,(1,7)=0} PSI{}\n",
        )
        .unwrap();
        let r = replay(&s);
        assert_eq!(r.failed_steps(), 1);
        assert_eq!(r.steps[0].kind, "SWAP");
    }
}
