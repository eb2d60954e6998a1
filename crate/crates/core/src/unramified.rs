//! Formal unramified characters, the pairing of an essentially self-dual
//! Satake parameter, descent parameters, the weak-lift check and the
//! identification of the unramified constituent with a parabolic induction.
//!
//! Characters are written additively as rational combinations of named
//! generators (`Omega`, `mu1`, …, and the constant `1` for powers of `|·|`)
//! plus a `ℤ/2` component for the unramified quadratic character `χ_un`.

use crate::arith::{Q, q, qf};
use crate::root_datum::{Parity, Side};
use crate::weyl::{act_on_vector, enumerate_all, SignedPermutation, WeylType};
use num::{Signed, Zero};
use rand::seq::SliceRandom;
use rand::Rng;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};
use thiserror::Error;

/// Name of the central-character generator.
pub const OMEGA: &str = "Omega";
/// Key of the constant term.
const ONE: &str = "";

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum UnramifiedError {
    #[error("parameter is not essentially self-dual")]
    NotSelfDual,
    #[error("no pairing: {0} has no partner")]
    NoPairing(String),
    #[error("product constraint violated: sum of entries minus n*omega is {0}")]
    ProductConstraint(String),
    #[error("expected {0} entries, got {1}")]
    Shape(usize, usize),
    #[error("parameter is not of form {0}")]
    WrongForm(&'static str),
    #[error("no Weyl element carries the induced character to the collapsed form")]
    NoWitness,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct FormalCharacter {
    coeffs: BTreeMap<String, Q>,
    twist: bool,
}

impl FormalCharacter {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn gen(name: &str) -> Self {
        Self::scaled(name, q(1))
    }

    pub fn scaled(name: &str, c: Q) -> Self {
        let mut coeffs = BTreeMap::new();
        if !c.is_zero() {
            coeffs.insert(name.to_string(), c);
        }
        FormalCharacter { coeffs, twist: false }
    }

    /// `c·|·|`, the constant exponent `c`.
    pub fn constant(c: Q) -> Self {
        Self::scaled(ONE, c)
    }

    pub fn omega() -> Self {
        Self::gen(OMEGA)
    }

    /// `Ω/2`.
    pub fn half_omega() -> Self {
        Self::scaled(OMEGA, qf(1, 2))
    }

    pub fn chi_un() -> Self {
        FormalCharacter {
            coeffs: BTreeMap::new(),
            twist: true,
        }
    }

    pub fn coeff(&self, name: &str) -> Q {
        self.coeffs.get(name).cloned().unwrap_or_else(Q::zero)
    }

    pub fn twist(&self) -> bool {
        self.twist
    }

    pub fn with_twist(mut self, t: bool) -> Self {
        self.twist ^= t;
        self
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty() && !self.twist
    }

    /// Zero apart from the twist component.
    pub fn is_twist_only(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn mul_int(&self, k: i64) -> Self {
        let coeffs = if k == 0 {
            BTreeMap::new()
        } else {
            self.coeffs.iter().map(|(g, c)| (g.clone(), c * q(k))).collect()
        };
        FormalCharacter {
            coeffs,
            twist: self.twist && k % 2 != 0,
        }
    }

    fn combine(&self, o: &Self, sign: i64) -> Self {
        let mut coeffs = self.coeffs.clone();
        for (g, c) in &o.coeffs {
            let e = coeffs.entry(g.clone()).or_insert_with(Q::zero);
            *e += c * q(sign);
            if e.is_zero() {
                coeffs.remove(g);
            }
        }
        FormalCharacter {
            coeffs,
            twist: self.twist ^ o.twist,
        }
    }
}

impl Add for FormalCharacter {
    type Output = FormalCharacter;
    fn add(self, o: Self) -> Self {
        self.combine(&o, 1)
    }
}

impl Sub for FormalCharacter {
    type Output = FormalCharacter;
    fn sub(self, o: Self) -> Self {
        self.combine(&o, -1)
    }
}

impl Neg for FormalCharacter {
    type Output = FormalCharacter;
    fn neg(self) -> Self {
        self.mul_int(-1)
    }
}

impl Add for &FormalCharacter {
    type Output = FormalCharacter;
    fn add(self, o: Self) -> FormalCharacter {
        self.combine(o, 1)
    }
}

impl Sub for &FormalCharacter {
    type Output = FormalCharacter;
    fn sub(self, o: Self) -> FormalCharacter {
        self.combine(o, -1)
    }
}

impl fmt::Display for FormalCharacter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (g, c) in &self.coeffs {
            let neg = c.is_negative();
            let a = c.abs();
            let sep = match (first, neg) {
                (true, true) => "-",
                (true, false) => "",
                (false, true) => " - ",
                (false, false) => " + ",
            };
            write!(f, "{sep}")?;
            if g.is_empty() {
                write!(f, "{a}")?;
            } else if a == q(1) {
                write!(f, "{g}")?;
            } else {
                write!(f, "{a}*{g}")?;
            }
            first = false;
        }
        if self.twist {
            write!(f, "{}chi_un", if first { "" } else { " + " })?;
        }
        Ok(())
    }
}

fn sorted(v: &[FormalCharacter]) -> Vec<FormalCharacter> {
    let mut s = v.to_vec();
    s.sort();
    s
}

/// Multiset equality.
pub fn same_multiset(a: &[FormalCharacter], b: &[FormalCharacter]) -> bool {
    a.len() == b.len() && sorted(a) == sorted(b)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SatakeMultiset {
    pub entries: Vec<FormalCharacter>,
    pub omega: FormalCharacter,
}

impl SatakeMultiset {
    pub fn new(entries: Vec<FormalCharacter>, omega: FormalCharacter) -> Self {
        SatakeMultiset { entries, omega }
    }

    /// Half the number of entries.
    pub fn n(&self) -> usize {
        self.entries.len() / 2
    }

    /// `Σ μ_i − n·ω`.
    pub fn chi(&self) -> FormalCharacter {
        let total = self.entries.iter().fold(FormalCharacter::zero(), |acc, x| acc + x.clone());
        total - self.omega.mul_int(self.n() as i64)
    }
}

pub fn is_essentially_selfdual(s: &SatakeMultiset) -> bool {
    let duals: Vec<FormalCharacter> = s.entries.iter().map(|x| &s.omega - x).collect();
    s.entries.len().is_multiple_of(2) && same_multiset(&s.entries, &duals)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SplitTag {
    Split,
    NonSplit,
}

/// A reordering `σ` of the entries: position `k` holds `entries[order[k]]`,
/// and positions `k`, `2n−1−k` are paired (0-based). For a nonsplit
/// parameter the middle positions hold `Ω/2` and `Ω/2 + χ_un`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Pairing {
    pub order: Vec<usize>,
    pub tag: SplitTag,
    pub chi: FormalCharacter,
}

/// Greedy pairing: ascending indices, least partner index, self-matches only
/// through the two fixed points of `μ ↦ ω − μ`.
pub fn pair_parameters(s: &SatakeMultiset, case: Parity) -> Result<Pairing, UnramifiedError> {
    if !is_essentially_selfdual(s) {
        return Err(UnramifiedError::NotSelfDual);
    }
    let len = s.entries.len();
    let n = len / 2;
    let chi = s.chi();
    if case == Parity::Odd && !chi.is_zero() {
        return Err(UnramifiedError::ProductConstraint(chi.to_string()));
    }
    let mut used = vec![false; len];
    let mut pairs = Vec::with_capacity(n);
    let mut middle = Vec::new();
    for i in 0..len {
        if used[i] {
            continue;
        }
        used[i] = true;
        let partner = &s.omega - &s.entries[i];
        match (i + 1..len).find(|&j| !used[j] && s.entries[j] == partner) {
            Some(j) => {
                used[j] = true;
                pairs.push((i, j));
            }
            None if partner == s.entries[i] => middle.push(i),
            None => return Err(UnramifiedError::NoPairing(s.entries[i].to_string())),
        }
    }
    let tag = match middle.len() {
        0 => SplitTag::Split,
        2 if case == Parity::Even => SplitTag::NonSplit,
        _ => return Err(UnramifiedError::NoPairing(s.entries[middle[0]].to_string())),
    };
    if (tag == SplitTag::NonSplit) != chi.twist() || !chi.is_twist_only() {
        return Err(UnramifiedError::ProductConstraint(chi.to_string()));
    }
    middle.sort_by_key(|&k| s.entries[k].twist() != s.omega.twist());
    let mut order = vec![0; len];
    for (k, &(i, j)) in pairs.iter().enumerate() {
        order[k] = i;
        order[len - 1 - k] = j;
    }
    if let [a, b] = middle[..] {
        order[n - 1] = a;
        order[n] = b;
    }
    Ok(Pairing { order, tag, chi })
}

/// Checks the paired equations of a pairing against its multiset.
pub fn pairing_holds(s: &SatakeMultiset, p: &Pairing) -> bool {
    let len = s.entries.len();
    let n = len / 2;
    let mut seen = vec![false; len];
    for &k in &p.order {
        if k >= len || seen[k] {
            return false;
        }
        seen[k] = true;
    }
    if p.order.len() != len {
        return false;
    }
    let e = |k: usize| &s.entries[p.order[k]];
    let paired = match p.tag {
        SplitTag::Split => n,
        SplitTag::NonSplit => n - 1,
    };
    let pairs_ok = (0..paired).all(|k| e(k) + e(len - 1 - k) == s.omega);
    let middle_ok = match p.tag {
        SplitTag::Split => true,
        SplitTag::NonSplit => {
            let h = FormalCharacter::half_omega();
            e(n - 1) == &h && e(n) == &h.clone().with_twist(true)
        }
    };
    pairs_ok && middle_ok
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum MuForm {
    One,
    Two,
}

/// The reordered parameter in one of the two canonical shapes:
/// `μ_1, …, μ_n, Ω−μ_n, …, Ω−μ_1` or
/// `μ_1, …, μ_{n−1}, Ω/2, Ω/2+χ_un, Ω−μ_{n−1}, …, Ω−μ_1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassifiedMu {
    pub form: MuForm,
    pub entries: Vec<FormalCharacter>,
    pub omega: FormalCharacter,
}

impl ClassifiedMu {
    /// `μ_1, …, μ_k` with `k = n` (form one) or `n − 1` (form two).
    pub fn free_part(&self) -> &[FormalCharacter] {
        let n = self.entries.len() / 2;
        match self.form {
            MuForm::One => &self.entries[..n],
            MuForm::Two => &self.entries[..n - 1],
        }
    }
}

pub fn classify_mu_form(s: &SatakeMultiset) -> Result<ClassifiedMu, UnramifiedError> {
    let p = pair_parameters(s, Parity::Even)?;
    let entries = p.order.iter().map(|&k| s.entries[k].clone()).collect();
    let form = match p.tag {
        SplitTag::Split => MuForm::One,
        SplitTag::NonSplit => MuForm::Two,
    };
    Ok(ClassifiedMu {
        form,
        entries,
        omega: s.omega.clone(),
    })
}

/// A character of the descent torus: `e0` is the coefficient of `ē_0*`
/// (odd case), `mu` the coefficients of the `GL_1` factors, `det0` that of the
/// determinant of the quasi-split middle factor (even nonsplit case).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DescentParameter {
    pub e0: Option<FormalCharacter>,
    pub mu: Vec<FormalCharacter>,
    pub det0: Option<FormalCharacter>,
}

/// Odd case: one parameter `(ω; μ_1, …, μ_n)`. Even split: `μ*` and `μ**`,
/// differing in the last slot. Even nonsplit: `μ*` with the `det_0` term.
pub fn descent_parameter(s: &SatakeMultiset, case: Parity) -> Result<Vec<DescentParameter>, UnramifiedError> {
    let p = pair_parameters(s, case)?;
    let n = s.n();
    let firsts: Vec<FormalCharacter> = p.order[..n].iter().map(|&k| s.entries[k].clone()).collect();
    Ok(match (case, p.tag) {
        (Parity::Odd, _) => vec![DescentParameter {
            e0: Some(s.omega.clone()),
            mu: firsts,
            det0: None,
        }],
        (Parity::Even, SplitTag::Split) => {
            let mut alt = firsts.clone();
            if let Some(last) = alt.last_mut() {
                *last = &s.omega - last;
            }
            vec![
                DescentParameter {
                    e0: None,
                    mu: firsts,
                    det0: None,
                },
                DescentParameter {
                    e0: None,
                    mu: alt,
                    det0: None,
                },
            ]
        }
        (Parity::Even, SplitTag::NonSplit) => {
            let det0 = -(FormalCharacter::half_omega().with_twist(true));
            vec![DescentParameter {
                e0: None,
                mu: firsts[..n - 1].to_vec(),
                det0: Some(det0),
            }]
        }
    })
}

/// Image of a descent parameter under the standard embedding of dual groups.
pub fn lift_multiset(d: &DescentParameter, omega: &FormalCharacter) -> Vec<FormalCharacter> {
    let w = d.e0.as_ref().unwrap_or(omega);
    let mut out = Vec::new();
    for m in &d.mu {
        out.push(m.clone());
        out.push(w - m);
    }
    if let Some(det0) = &d.det0 {
        let a = -det0.clone();
        out.push(a.clone());
        out.push(a.with_twist(true));
    }
    out
}

pub fn verify_weak_lift(s: &SatakeMultiset, descent: &[DescentParameter], case: Parity) -> bool {
    !descent.is_empty()
        && descent.iter().all(|d| {
            let shape_ok = match case {
                Parity::Odd => d.e0.is_some() && d.det0.is_none() && d.mu.len() == s.n(),
                Parity::Even => d.e0.is_none() && d.mu.len() + usize::from(d.det0.is_some()) == s.n(),
            };
            shape_ok
                && d.e0.as_ref().is_none_or(|w| w == &s.omega)
                && same_multiset(&lift_multiset(d, &s.omega), &s.entries)
        })
}

/// A character of `T(G_{4n+1})` with formal coefficients, indexed `e_0, e_1, …, e_{2n}`.
pub type FormalLatticeVector = Vec<FormalCharacter>;

/// `w·χ`, computed by linearity from the action on basis vectors.
pub fn act_formal(w: &SignedPermutation, v: &[FormalCharacter]) -> FormalLatticeVector {
    let r = w.rank();
    let mut out = vec![FormalCharacter::zero(); r + 1];
    for (k, c) in v.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let mut basis = vec![0i64; r + 1];
        basis[k] = 1;
        let img = act_on_vector(w, &basis, Side::Char).expect("rank matches");
        for (j, &x) in img.iter().enumerate() {
            if x != 0 {
                out[j] = &out[j] + &c.mul_int(x);
            }
        }
    }
    out
}

/// A type-B signed permutation `w` with `w·source = target`, found by
/// backtracking over target slots.
pub fn find_weyl_witness(source: &[FormalCharacter], target: &[FormalCharacter]) -> Option<SignedPermutation> {
    let r = source.len().checked_sub(1)?;
    if target.len() != r + 1 || source[0] != target[0] {
        return None;
    }
    let c0 = &source[0];
    let mut p = vec![0usize; r];
    let mut eps = vec![1i8; r];
    let mut used = vec![false; r + 1];

    fn go(
        j: usize,
        r: usize,
        source: &[FormalCharacter],
        target: &[FormalCharacter],
        c0: &FormalCharacter,
        p: &mut [usize],
        eps: &mut [i8],
        used: &mut [bool],
    ) -> bool {
        if j > r {
            return true;
        }
        for k in 1..=r {
            if used[k] {
                continue;
            }
            for s in [1i8, -1] {
                let val = if s == 1 { source[k].clone() } else { c0 - &source[k] };
                if val == target[j] {
                    used[k] = true;
                    p[k - 1] = j;
                    eps[j - 1] = s;
                    if go(j + 1, r, source, target, c0, p, eps, used) {
                        return true;
                    }
                    used[k] = false;
                }
            }
        }
        false
    }

    if !go(1, r, source, target, c0, &mut p, &mut eps, &mut used) {
        return None;
    }
    let w = SignedPermutation::new(WeylType::B, p, eps).ok()?;
    (act_formal(&w, source) == target).then_some(w)
}

/// Exhaustive version of [`find_weyl_witness`], for small rank.
pub fn search_weyl_witness(source: &[FormalCharacter], target: &[FormalCharacter]) -> Option<SignedPermutation> {
    let r = source.len().checked_sub(1)?;
    enumerate_all(WeylType::B, r)
        .into_iter()
        .find(|w| act_formal(w, source) == target)
}

/// The unramified constituent written as an induction from a parabolic: a
/// list of named Levi characters with formal coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParabolicCharacter {
    pub parabolic: &'static str,
    pub terms: Vec<(String, FormalCharacter)>,
}

impl fmt::Display for ParabolicCharacter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:", self.parabolic)?;
        for (i, (name, c)) in self.terms.iter().enumerate() {
            write!(f, "{}({c})*{name}", if i == 0 { " " } else { " + " })?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Collapse {
    /// `μ + ½(e_1 + … + e_{2n}) + Ω e_0`, indexed `e_0, …, e_{2n}`.
    pub induced: FormalLatticeVector,
    /// The Weyl conjugate in which adjacent coordinates differ by one.
    pub conjugate: FormalLatticeVector,
    pub witness: SignedPermutation,
    pub result: ParabolicCharacter,
    /// Form two only: the same character in the `e_{2n−1}`, `det_0` basis.
    pub alternate: Option<ParabolicCharacter>,
}

fn half() -> FormalCharacter {
    FormalCharacter::constant(qf(1, 2))
}

/// The two-coordinate `GL_2` collapse: `(x + ½, x − ½)` or `(x − ½, x + ½)` ↦ `x`.
pub fn gl2_collapse(a: &FormalCharacter, b: &FormalCharacter) -> Option<FormalCharacter> {
    let x = a - &half();
    if &x - &half() == *b {
        return Some(x);
    }
    let y = a + &half();
    (&y + &half() == *b).then_some(y)
}

pub fn collapse_unramified(c: &ClassifiedMu) -> Result<Collapse, UnramifiedError> {
    let len = c.entries.len();
    let n = len / 2;
    let omega = &c.omega;
    let mut induced = vec![omega.clone()];
    induced.extend(c.entries.iter().map(|x| x + &half()));
    let mut conjugate = vec![omega.clone()];
    for mu in c.free_part() {
        conjugate.push(mu + &half());
        conjugate.push(mu - &half());
    }
    if c.form == MuForm::Two {
        let x = &FormalCharacter::half_omega() - &half();
        conjugate.push(x.clone());
        conjugate.push(x.with_twist(true));
    }
    let witness = find_weyl_witness(&induced, &conjugate).ok_or(UnramifiedError::NoWitness)?;
    let mut terms = Vec::new();
    for i in 0..c.free_part().len() {
        let x = gl2_collapse(&conjugate[2 * i + 1], &conjugate[2 * i + 2]).ok_or(UnramifiedError::NoWitness)?;
        terms.push((format!("det{}", i + 1), x));
    }
    match c.form {
        MuForm::One => {
            terms.push(("e0".to_string(), omega.clone()));
            Ok(Collapse {
                induced,
                conjugate,
                witness,
                result: ParabolicCharacter { parabolic: "P1", terms },
                alternate: None,
            })
        }
        MuForm::Two => {
            // e_0 = −f_1, e_{2n−1} = −f_0 + f_1 + f_2, e_{2n} = f_1 − f_2.
            let (c0, a, b) = (&conjugate[0], &conjugate[len - 1], &conjugate[len]);
            let f0 = -a.clone();
            let f1 = &(a + b) - c0;
            let f2 = a - b;
            let det0 = gl2_collapse(&f1, &f2).ok_or(UnramifiedError::NoWitness)?;
            let mut alt = terms.clone();
            terms.push(("f0".to_string(), f0));
            terms.push(("det0".to_string(), det0));
            // det_0 = f_1 + f_2, so x·f_0 + y·det_0 = −x·e_{2n−1} + (x + y)·det_0.
            let (x, y) = (&terms[n - 1].1, &terms[n].1);
            alt.push((format!("e{}", 2 * n - 1), -x.clone()));
            alt.push(("det0".to_string(), x + y));
            Ok(Collapse {
                induced,
                conjugate,
                witness,
                result: ParabolicCharacter { parabolic: "P2", terms },
                alternate: Some(ParabolicCharacter {
                    parabolic: "P2",
                    terms: alt,
                }),
            })
        }
    }
}

/// A random essentially self-dual parameter with `2n` entries over generators
/// `mu1..mu{n}`, with repeated values, fixed points and the nonsplit middle
/// pair occurring with positive probability. Entries are shuffled.
pub fn random_selfdual<R: Rng + ?Sized>(n: usize, rng: &mut R) -> SatakeMultiset {
    let omega = FormalCharacter::omega();
    let mut entries = Vec::with_capacity(2 * n);
    let mut k = 0;
    while k < n {
        let roll = rng.gen_range(0..10);
        let mu = if roll == 0 {
            FormalCharacter::half_omega()
        } else if roll == 1 && k + 1 == n && n >= 1 && rng.gen_bool(0.5) {
            let h = FormalCharacter::half_omega();
            entries.push(h.clone());
            entries.push(h.with_twist(true));
            k += 1;
            continue;
        } else if roll == 2 && !entries.is_empty() {
            entries[rng.gen_range(0..entries.len())].clone()
        } else {
            let mut x = FormalCharacter::zero();
            for g in 1..=n {
                let c = rng.gen_range(-2i64..=2);
                x = x + FormalCharacter::scaled(&format!("mu{g}"), qf(c, rng.gen_range(1..=2)));
            }
            x = x + FormalCharacter::scaled(OMEGA, qf(rng.gen_range(-1..=1), 2));
            x.with_twist(rng.gen_bool(0.3))
        };
        entries.push(&omega - &mu);
        entries.push(mu);
        k += 1;
    }
    entries.shuffle(rng);
    SatakeMultiset::new(entries, omega)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn mu(i: usize) -> FormalCharacter {
        FormalCharacter::gen(&format!("mu{i}"))
    }

    fn form_one(n: usize) -> SatakeMultiset {
        let w = FormalCharacter::omega();
        let mut e: Vec<_> = (1..=n).map(mu).collect();
        e.extend((1..=n).rev().map(|i| &w - &mu(i)));
        SatakeMultiset::new(e, w)
    }

    fn form_two(n: usize) -> SatakeMultiset {
        let w = FormalCharacter::omega();
        let h = FormalCharacter::half_omega();
        let mut e: Vec<_> = (1..n).map(mu).collect();
        e.push(h.clone());
        e.push(h.with_twist(true));
        e.extend((1..n).rev().map(|i| &w - &mu(i)));
        SatakeMultiset::new(e, w)
    }

    #[test]
    fn twist_arithmetic() {
        let c = FormalCharacter::chi_un();
        assert!((&c + &c).is_zero());
        assert!(c.mul_int(2).is_zero());
        assert_eq!(-c.clone(), c);
        assert_eq!(FormalCharacter::half_omega().mul_int(2), FormalCharacter::omega());
    }

    #[test]
    fn selfduality() {
        let w = FormalCharacter::omega();
        let s = SatakeMultiset::new(vec![mu(1), &w - &mu(1)], w.clone());
        assert!(is_essentially_selfdual(&s));
        assert!(!is_essentially_selfdual(&SatakeMultiset::new(vec![mu(1), mu(2)], w)));
        assert!(is_essentially_selfdual(&form_two(3)));
    }

    #[test]
    fn pairing_examples() {
        let w = FormalCharacter::omega();
        let s = SatakeMultiset::new(vec![mu(1), &w - &mu(1)], w.clone());
        let p = pair_parameters(&s, Parity::Even).unwrap();
        assert_eq!(p.order, vec![0, 1]);
        assert_eq!(p.tag, SplitTag::Split);
        let h = FormalCharacter::half_omega();
        let s = SatakeMultiset::new(vec![h.clone().with_twist(true), h], w);
        let p = pair_parameters(&s, Parity::Even).unwrap();
        assert_eq!(p.tag, SplitTag::NonSplit);
        assert_eq!(p.chi, FormalCharacter::chi_un());
        assert!(pairing_holds(&s, &p));
        assert!(pair_parameters(&s, Parity::Odd).is_err());
    }

    #[test]
    fn classification() {
        let c = classify_mu_form(&form_one(3)).unwrap();
        assert_eq!(c.form, MuForm::One);
        assert_eq!(c.entries, form_one(3).entries);
        let c = classify_mu_form(&form_two(3)).unwrap();
        assert_eq!(c.form, MuForm::Two);
        assert_eq!(c.entries, form_two(3).entries);
        // μ_n = Ω/2 without twist stays in form one.
        let w = FormalCharacter::omega();
        let h = FormalCharacter::half_omega();
        let s = SatakeMultiset::new(vec![mu(1), h.clone(), h, &w - &mu(1)], w);
        assert_eq!(classify_mu_form(&s).unwrap().form, MuForm::One);
    }

    #[test]
    fn descent_examples() {
        let d = descent_parameter(&form_one(2), Parity::Odd).unwrap();
        assert_eq!(d[0].e0, Some(FormalCharacter::omega()));
        assert_eq!(d[0].mu, vec![mu(1), mu(2)]);
        let d = descent_parameter(&form_one(2), Parity::Even).unwrap();
        assert_eq!(d.len(), 2);
        assert_eq!(d[0].mu[0], d[1].mu[0]);
        assert_eq!(d[1].mu[1], &FormalCharacter::omega() - &mu(2));
        assert!(verify_weak_lift(&form_one(2), &d, Parity::Even));
        let d = descent_parameter(&form_two(2), Parity::Even).unwrap();
        let det0 = d[0].det0.clone().unwrap();
        assert_eq!(det0.coeff(OMEGA), qf(-1, 2));
        assert!(det0.twist());
        assert!(verify_weak_lift(&form_two(2), &d, Parity::Even));
        let mut bad = form_two(2);
        bad.entries[0] = FormalCharacter::gen("fresh");
        assert!(!verify_weak_lift(&bad, &d, Parity::Even));
    }

    #[test]
    fn random_round_trips() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for n in 1..=4 {
            for _ in 0..50 {
                let s = random_selfdual(n, &mut rng);
                let p = pair_parameters(&s, Parity::Even).unwrap();
                assert!(pairing_holds(&s, &p));
                let d = descent_parameter(&s, Parity::Even).unwrap();
                assert!(verify_weak_lift(&s, &d, Parity::Even));
            }
        }
    }

    #[test]
    fn case_one_collapse() {
        let c = classify_mu_form(&form_one(2)).unwrap();
        let out = collapse_unramified(&c).unwrap();
        let names: Vec<_> = out.result.terms.iter().map(|(k, _)| k.as_str()).collect();
        assert_eq!(names, ["det1", "det2", "e0"]);
        assert_eq!(out.result.terms[0].1, mu(1));
        assert_eq!(out.result.terms[1].1, mu(2));
        assert_eq!(out.result.terms[2].1, FormalCharacter::omega());
        assert_eq!(act_formal(&out.witness, &out.induced), out.conjugate);
        assert!(search_weyl_witness(&out.induced, &out.conjugate).is_some());
    }

    #[test]
    fn case_two_collapse() {
        let c = classify_mu_form(&form_two(2)).unwrap();
        let out = collapse_unramified(&c).unwrap();
        let t = &out.result.terms;
        assert_eq!(t[0], ("det1".to_string(), mu(1)));
        let f0 = FormalCharacter::scaled(OMEGA, qf(-1, 2)) + FormalCharacter::constant(qf(1, 2));
        assert_eq!(t[1], ("f0".to_string(), f0));
        let det0 = FormalCharacter::constant(qf(-1, 2)).with_twist(true);
        assert_eq!(t[2], ("det0".to_string(), det0));
        let alt = out.alternate.unwrap().terms;
        let e3 = FormalCharacter::scaled(OMEGA, qf(1, 2)) - FormalCharacter::constant(qf(1, 2));
        assert_eq!(alt[1], ("e3".to_string(), e3));
        assert_eq!(alt[2].1, -(FormalCharacter::half_omega().with_twist(true)));
    }
}
