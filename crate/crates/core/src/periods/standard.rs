//! Named unipotent periods: the descent characters `Ψ_ℓ`, `Ψ_ℓ^a` on `N_ℓ`
//! and the intermediate periods of the two derivation appendices.
//!
//! A name is `family.Kind[p=v,...]`, e.g. `odd.U5[k=2]` or `even.U1[a=3]`.
//! `odd.*` lives in `so_{4n}` and `even.*` in `so_{4n+1}`; `n` is read off
//! the ambient size.

use super::algebra::{Ambient, CharacterFunctional, NilSubalgebra, UniPeriod};
use super::PeriodError;
use crate::arith::{parse_q, q, Q};
use num::{Signed, ToPrimitive, Zero};
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

/// A period name with its parameters, in the order written.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PeriodRef {
    pub kind: String,
    pub params: Vec<(String, Q)>,
}

impl PeriodRef {
    pub fn new(kind: &str, params: &[(&str, Q)]) -> Self {
        PeriodRef {
            kind: kind.to_string(),
            params: params.iter().map(|(k, v)| (k.to_string(), v.clone())).collect(),
        }
    }

    fn get(&self, key: &str) -> Result<&Q, PeriodError> {
        self.params
            .iter()
            .find(|(k, _)| k == key)
            .map(|(_, v)| v)
            .ok_or_else(|| PeriodError::Params(format!("{self}: missing parameter {key}")))
    }

    fn int(&self, key: &str) -> Result<usize, PeriodError> {
        let v = self.get(key)?;
        if !v.is_integer() || v.is_negative() {
            return Err(PeriodError::Params(format!("{self}: {key} must be a nonnegative integer")));
        }
        v.to_integer()
            .to_usize()
            .ok_or_else(|| PeriodError::Params(format!("{self}: {key} too large")))
    }
}

impl fmt::Display for PeriodRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.kind)?;
        if !self.params.is_empty() {
            let ps: Vec<String> = self.params.iter().map(|(k, v)| format!("{k}={v}")).collect();
            write!(f, "[{}]", ps.join(","))?;
        }
        Ok(())
    }
}

impl FromStr for PeriodRef {
    type Err = PeriodError;

    fn from_str(s: &str) -> Result<Self, PeriodError> {
        let s = s.trim();
        let bad = || PeriodError::Params(format!("malformed period name {s:?}"));
        let (kind, rest) = match s.find('[') {
            Some(p) => (&s[..p], Some(&s[p..])),
            None => (s, None),
        };
        if kind.is_empty() || !kind.chars().all(|c| c.is_ascii_alphanumeric() || c == '.' || c == '_') {
            return Err(bad());
        }
        let mut params = Vec::new();
        if let Some(rest) = rest {
            let inner = rest.strip_prefix('[').and_then(|r| r.strip_suffix(']')).ok_or_else(bad)?;
            for part in inner.split(',').filter(|p| !p.trim().is_empty()) {
                let (k, v) = part.split_once('=').ok_or_else(bad)?;
                let v = parse_q(v.trim()).ok_or_else(bad)?;
                params.push((k.trim().to_string(), v));
            }
        }
        Ok(PeriodRef { kind: kind.to_string(), params })
    }
}

/// Every registered kind with its parameters and a one-line description.
pub const STANDARD_KINDS: &[(&str, &str, &str)] = &[
    ("odd.Psi", "ell", "N_ell with u12+..+u_{ell-1,ell}+u_{ell,2n}-u_{ell,2n+1}"),
    ("odd.PsiA", "ell,a", "N_ell with u12+..+u_{ell-1,ell}+a*u_{ell,2n}+u_{ell,2n+1}"),
    ("odd.U1", "", "descent composed with the Whittaker period of the stabilizer"),
    ("odd.U2", "", "u_{i,i+1}=0 for even i, character u13+..+u_{2n-1,2n+1}"),
    ("odd.U2main", "", "U2 with the parity-dependent character of the genericity argument"),
    ("odd.U2p", "", "U2 with u13+..+u_{2n-2,2n}-u_{2n-2,2n+1}+u_{2n-1,2n+1}"),
    ("odd.U2pp", "", "U2 with u13+..+u_{2n-2,2n}-u_{2n-2,2n+1}+u_{2n-1,2n}"),
    ("odd.U3", "", "maximal unipotent with u12+..+u_{2n-1,2n}"),
    ("odd.U4", "", "first exchange of U1"),
    ("odd.U5", "k", "1<=k<=n"),
    ("odd.U6", "k", "1<=k<=n"),
    ("odd.U7", "k", "1<=k<=2n-1, untilded character"),
    ("odd.U7t", "k", "1<=k<=2n-1, tilded character"),
    ("odd.U7a", "k,a", "tilded character plus a*u_{2n-1,2n}"),
    ("odd.U8t", "k", "U7 cut by u_{2n-1,2n}=0, tilded character"),
    ("odd.U9", "k,l,a", ""),
    ("odd.U10", "k,l,a", ""),
    ("odd.U11", "k,l,a", ""),
    ("odd.cusp.U1", "k", "V_k composed with (N_{n-1}, Psi_{n-1})"),
    ("odd.cusp.U2", "k", ""),
    ("odd.cusp.U3", "k", ""),
    ("odd.cusp.Ur", "k,r", "u_ij=0 for j<=r or i>=n+k; r=k+1 is U4, r=1 is N_{n+k-1}"),
    ("odd.cusp.U4l", "k,l", "U4 with u_ij=0 for i<=k, j<=k+l"),
    ("even.Psi", "ell", "N_ell with u12+..+u_{ell-1,ell}+u_{ell,2n+1}"),
    ("even.PsiA", "ell,a", "N_ell with u12+..+u_{ell-1,ell}+u_{ell,2n}+(a/2)u_{ell,2n+2}"),
    ("even.U1", "a", "descent composed with the Whittaker period of the stabilizer"),
    ("even.U2", "a", "u_{2n,2n+1}=0, u12=u34=..=u_{2n-1,2n}"),
    ("even.U2p", "a", "U5[k=n-1] with the primed character"),
    ("even.U3", "", "maximal unipotent with u12+..+u_{2n-1,2n}"),
    ("even.U4", "a", "first exchange of U1"),
    ("even.U5", "k,a", "1<=k<=n-1"),
    ("even.U6", "k,a", "1<=k<=n-1"),
    ("even.U7", "k", "n<=k<=2n-1"),
    ("even.U8", "k", "n<=k<=2n-1"),
    ("even.U8t", "k", "n<=k<=2n-1, tilded character"),
    ("even.U9", "k", "n<=k<=2n-1, conjugate of U7[k-1]"),
    ("even.U9b", "k", "n<=k<=2n-1, U8 cut by u_{k,2n}=0"),
    ("even.cusp.T", "m1,m2,m3,a", "triple group with the unprimed character"),
    ("even.cusp.Tp", "m1,m2,m3,a", "triple group with the primed character"),
    ("even.cusp.V", "k,a", "V_k composed with (N_n, Psi_n^a)"),
    ("even.cusp.Vpp", "k,a", "triple (n-1,n+k+1,n+k) with the doubly primed character"),
    ("even.cuspn.Up", "m", "GL1 x GLn case, primed character"),
    ("even.cuspn.Upp", "m", "GL1 x GLn case, doubly primed character"),
];

/// Accumulates defining equations and character terms for one period.
struct Builder {
    m: usize,
    amb: Arc<Ambient>,
    eqs: Vec<Vec<Q>>,
    terms: Vec<((usize, usize), Q)>,
}

impl Builder {
    fn new(m: usize) -> Self {
        Builder { m, amb: Ambient::get(m), eqs: Vec::new(), terms: Vec::new() }
    }

    /// `u_{ij} = 0` for every coordinate satisfying `pred`.
    fn zero_where(&mut self, pred: impl Fn(usize, usize) -> bool) {
        for (k, &(i, j)) in self.amb.coords().iter().enumerate() {
            if pred(i, j) {
                let mut e = vec![Q::zero(); self.amb.dim()];
                e[k] = q(1);
                self.eqs.push(e);
            }
        }
    }

    /// `u_{ij} = c·u_{kl}`.
    fn relation(&mut self, (i, j): (usize, usize), c: Q, (k, l): (usize, usize)) -> Result<(), PeriodError> {
        let e = self.amb.functional(&[((i, j), q(1)), ((k, l), -c)])?;
        self.eqs.push(e);
        Ok(())
    }

    fn term(&mut self, i: usize, j: usize, c: Q) {
        self.terms.push(((i, j), c));
    }

    /// `Σ u_{i,i+step}` for `i` in `lo..=hi` (empty when `lo > hi`).
    fn run(&mut self, lo: usize, hi: usize, step: usize) {
        for i in lo.max(1)..=hi {
            self.term(i, i + step, q(1));
        }
    }

    fn finish(self) -> Result<UniPeriod, PeriodError> {
        let alg = NilSubalgebra::solutions(self.m, &self.eqs)?;
        let chi = CharacterFunctional::from_terms(self.m, &self.terms)?;
        UniPeriod::new(alg, &chi)
    }
}

fn check_range(name: &PeriodRef, key: &str, v: usize, lo: usize, hi: usize) -> Result<(), PeriodError> {
    if v < lo || v > hi {
        return Err(PeriodError::Params(format!("{name}: need {lo} <= {key} <= {hi}, got {v}")));
    }
    Ok(())
}

/// `n` for the family of `name` in ambient size `m`.
fn rank_for(name: &PeriodRef, m: usize) -> Result<usize, PeriodError> {
    let family = name.kind.split('.').next().unwrap_or("");
    let n = match family {
        "odd" if m.is_multiple_of(4) => m / 4,
        "even" if m % 4 == 1 => m / 4,
        "odd" | "even" => {
            return Err(PeriodError::Params(format!("{name} does not live in size {m}")));
        }
        _ => return Err(PeriodError::UnknownPeriod(name.to_string())),
    };
    if n < 2 {
        return Err(PeriodError::Params(format!("{name}: need n >= 2, got n={n}")));
    }
    Ok(n)
}

/// The period registered under `name`, in ambient size `m`.
pub fn make_standard_period(name: &PeriodRef, m: usize) -> Result<UniPeriod, PeriodError> {
    let n = rank_for(name, m)?;
    let mut b = Builder::new(m);
    let kind = name.kind.as_str();
    match kind {
        "odd.Psi" | "odd.PsiA" | "even.Psi" | "even.PsiA" => {
            let ell = name.int("ell")?;
            let top = if kind == "even.PsiA" || kind.starts_with("odd") { 2 * n - 1 } else { 2 * n };
            check_range(name, "ell", ell, 1, top)?;
            b.zero_where(|i, _| i > ell);
            b.run(1, ell - 1, 1);
            match kind {
                "odd.Psi" => {
                    b.term(ell, 2 * n, q(1));
                    b.term(ell, 2 * n + 1, q(-1));
                }
                "odd.PsiA" => {
                    b.term(ell, 2 * n, name.get("a")?.clone());
                    b.term(ell, 2 * n + 1, q(1));
                }
                "even.Psi" => b.term(ell, 2 * n + 1, q(1)),
                _ => {
                    b.term(ell, 2 * n, q(1));
                    b.term(ell, 2 * n + 2, name.get("a")?.clone() / q(2));
                }
            }
        }
        "odd.U1" | "odd.U4" => {
            if kind == "odd.U1" {
                for i in n..2 * n {
                    b.relation((i, 2 * n), q(1), (i, 2 * n + 1))?;
                }
            } else {
                b.zero_where(|i, j| i == n - 1 && (n..=2 * n - 2).contains(&j));
                b.relation((2 * n - 1, 2 * n), q(1), (2 * n - 1, 2 * n + 1))?;
            }
            odd_psi1(&mut b, n);
        }
        "odd.U2" | "odd.U2main" | "odd.U2p" | "odd.U2pp" => {
            b.zero_where(|i, j| j == i + 1 && i % 2 == 0);
            let dagger_form = kind == "odd.U2main" && n % 2 == 1;
            if kind == "odd.U2" || (kind == "odd.U2main" && !dagger_form) {
                b.run(1, 2 * n - 1, 2);
            } else if dagger_form {
                b.run(1, 2 * n - 3, 2);
                b.term(2 * n - 2, 2 * n + 1, q(1));
                b.term(2 * n - 1, 2 * n, q(1));
            } else {
                b.run(1, 2 * n - 2, 2);
                b.term(2 * n - 2, 2 * n + 1, q(-1));
                if kind == "odd.U2p" {
                    b.term(2 * n - 1, 2 * n + 1, q(1));
                } else {
                    b.term(2 * n - 1, 2 * n, q(1));
                }
            }
        }
        "odd.U3" | "even.U3" => b.run(1, 2 * n - 1, 1),
        "odd.U5" | "odd.U6" => {
            let k = name.int("k")?;
            check_range(name, "k", k, 1, n)?;
            b.relation((2 * n - 1, 2 * n), q(1), (2 * n - 1, 2 * n + 1))?;
            let row = n + k - 2;
            b.zero_where(|i, j| i == row && j < 2 * n - 1);
            if kind == "odd.U5" {
                b.zero_where(|i, j| j == i + 1 && i + k >= n && i < n + k && (i + k + n) % 2 == 0);
            } else {
                b.zero_where(|i, j| j == i + 1 && i + k >= n && i + 2 < n + k && (i + k + n) % 2 == 1);
            }
            b.run(1, (n - k).saturating_sub(1), 1);
            if n + k >= 3 {
                b.run(n - k, n + k - 3, 2);
            }
            b.term(row, 2 * n, q(1));
            b.term(row, 2 * n + 1, q(-1));
            b.run(n + k - 1, 2 * n - 1, 1);
        }
        "odd.U7" | "odd.U7t" | "odd.U7a" | "odd.U8t" => {
            let k = name.int("k")?;
            check_range(name, "k", k, 1, 2 * n - 1)?;
            b.zero_where(|i, j| j == i + 1 && i > k && (i + k) % 2 == 1);
            if kind == "odd.U8t" {
                b.zero_where(|i, j| (i, j) == (2 * n - 1, 2 * n));
            }
            if kind == "odd.U7" {
                b.run(1, k, 1);
                b.run(k + 1, 2 * n - 1, 2);
            } else {
                b.run(1, k - 1, 1);
                b.run(k, 2 * n - 1, 2);
            }
            if kind == "odd.U7a" {
                b.term(2 * n - 1, 2 * n, name.get("a")?.clone());
            }
        }
        "odd.U9" | "odd.U10" | "odd.U11" => {
            let (k, l) = (name.int("k")?, name.int("l")?);
            let a = name.get("a")?.clone();
            check_range(name, "k", k, 1, 2 * n - 2)?;
            check_range(name, "l", l, 1, n)?;
            let last = k + 2 * l;
            if last > 2 * n - 1 {
                return Err(PeriodError::Params(format!("{name}: need k+2l <= 2n-1")));
            }
            let parity = if kind == "odd.U11" { 0 } else { 1 };
            b.zero_where(|i, j| k < i && i <= last && (i + k) % 2 == parity && j == i + 1);
            if kind == "odd.U9" {
                b.zero_where(|i, j| i > last || (i == last - 1 && j != 4 * n + 1 - last) || (i == last && j < 2 * n));
                b.run(1, k - 1, 1);
                b.run(k, last - 2, 2);
                b.term(last, 2 * n, a);
                b.term(last, 2 * n + 1, q(1));
            } else {
                b.zero_where(|i, j| i > last - 1 || (i == last - 1 && j < 2 * n));
                b.run(1, k, 1);
                b.run(k + 1, last - 2, 2);
                b.term(last - 1, 2 * n, a);
                b.term(last - 1, 2 * n + 1, q(1));
            }
        }
        "odd.cusp.U1" | "odd.cusp.U2" | "odd.cusp.U3" => {
            let k = name.int("k")?;
            check_range(name, "k", k, 1, n)?;
            let top = n - 1 + k;
            if kind == "odd.cusp.U3" {
                b.zero_where(|i, j| (i <= k && j <= top) || i > top);
                for i in 1..=k {
                    b.relation((i, 2 * n), q(1), (i, 2 * n + 1))?;
                }
                b.run(k + 1, k + n - 2, 1);
                b.term(top, 2 * n, q(1));
                b.term(top, 2 * n + 1, q(-1));
            } else {
                b.zero_where(|i, j| (n - 1 < i && j <= top) || i > top);
                if kind == "odd.cusp.U2" {
                    b.zero_where(|i, j| i < n && n - 1 < j && j <= top);
                }
                for i in n..=top {
                    b.relation((i, 2 * n), q(1), (i, 2 * n + 1))?;
                }
                b.run(1, n - 2, 1);
                b.term(n - 1, 2 * n, q(1));
                b.term(n - 1, 2 * n + 1, q(-1));
            }
        }
        "odd.cusp.Ur" | "odd.cusp.U4l" => {
            let k = name.int("k")?;
            check_range(name, "k", k, 1, n)?;
            let top = n - 1 + k;
            let r = if kind == "odd.cusp.Ur" {
                let r = name.int("r")?;
                check_range(name, "r", r, 1, k + 1)?;
                r
            } else {
                let l = name.int("l")?;
                check_range(name, "l", l, 1, n - 1)?;
                b.zero_where(|i, j| i <= k && j <= k + l);
                k + 1
            };
            b.zero_where(|i, j| j <= r || i > top);
            b.run(r, top - 1, 1);
            b.term(top, 2 * n, q(1));
            b.term(top, 2 * n + 1, q(-1));
        }
        "even.U1" | "even.U4" => {
            let a = name.get("a")?.clone();
            b.zero_where(|i, j| (i, j) == (2 * n, 2 * n + 1));
            if kind == "even.U1" {
                for i in n + 1..2 * n {
                    b.relation((i, 2 * n), -a.clone() / q(2), (i, 2 * n + 2))?;
                }
            } else {
                b.zero_where(|i, j| i == n && (n + 1..2 * n).contains(&j));
            }
            b.run(1, n - 1, 1);
            b.term(n, 2 * n, q(1));
            b.term(n, 2 * n + 2, a / q(2));
            b.run(n + 1, 2 * n - 2, 1);
            b.term(2 * n - 1, 2 * n + 2, q(1));
        }
        "even.U2" => {
            let a = name.get("a")?.clone();
            b.zero_where(|i, j| (i, j) == (2 * n, 2 * n + 1));
            for t in 2..=n {
                b.relation((2 * t - 1, 2 * t), q(1), (1, 2))?;
            }
            b.run(1, 2 * n - 2, 2);
            b.term(2 * n - 1, 2 * n + 2, q(1));
            b.term(2 * n - 1, 2 * n, a / q(2));
        }
        "even.U5" | "even.U6" | "even.U2p" => {
            let a = name.get("a")?.clone();
            let k = if kind == "even.U2p" { n - 1 } else { name.int("k")? };
            check_range(name, "k", k, 1, n - 1)?;
            let row = n + k - 1;
            b.zero_where(|i, j| (i, j) == (2 * n, 2 * n + 1) || (i == row && j < 2 * n));
            let parity = if kind == "even.U6" { 0 } else { 1 };
            b.zero_where(|i, j| j == i + 1 && i + k > n && i + 1 < n + k && (i + k + n) % 2 == parity);
            if kind == "even.U2p" {
                // No u_{2n-2,2n+1} term: with it the character disagrees
                // with psi_2^a on the intersection with U2.
                b.run(1, 2 * n - 2, 2);
                b.term(2 * n - 1, 2 * n, a / q(2));
            } else {
                b.run(1, n - k, 1);
                b.run(n - k + 1, n + k - 2, 2);
                b.term(row, 2 * n, q(1));
                b.term(row, 2 * n + 2, a / q(2));
                b.run(n + k, 2 * n - 2, 1);
            }
            b.term(2 * n - 1, 2 * n + 2, q(1));
        }
        "even.U7" | "even.U8" | "even.U8t" | "even.U9" | "even.U9b" => {
            let k = name.int("k")?;
            check_range(name, "k", k, n, 2 * n - 1)?;
            if kind == "even.U7" {
                b.zero_where(|i, j| (i, j) == (2 * n, 2 * n + 1) || (j == 2 * n && k < i && i < 2 * n));
            } else {
                // U8 with u_{2n-1,2n+1} = 0 is not closed under the bracket;
                // u_{2n,2n+1} = 0 is, and gives U3 at k = 2n-1. U9 takes
                // u_{k,2n+1} = 0 instead, which makes it conjugate to U7^{(k-1)}.
                let corner = if kind == "even.U9" { (k, 2 * n + 1) } else { (2 * n, 2 * n + 1) };
                b.zero_where(|i, j| (i, j) == corner || (i == k && k < j && j < 2 * n));
                if kind == "even.U9" || kind == "even.U9b" {
                    b.zero_where(|i, j| (i, j) == (k, 2 * n));
                }
            }
            b.run(1, k - 1, 1);
            if kind == "even.U7" || kind == "even.U8" {
                b.term(k, 2 * n, q(1));
                b.run(k + 1, 2 * n - 2, 1);
                // At k = 2n-1 row 2n-1 already carries u_{k,2n}.
                if k < 2 * n - 1 {
                    b.term(2 * n - 1, 2 * n + 2, q(1));
                }
            } else {
                b.term(k, 2 * n + 2, q(1));
                b.run(k + 1, 2 * n - 1, 1);
            }
        }
        "even.cusp.T" | "even.cusp.Tp" => {
            let (m1, m2, m3) = (name.int("m1")?, name.int("m2")?, name.int("m3")?);
            let a = name.get("a")?.clone();
            if !(m1 < m2 && m2 <= m3 + 1 && m3 < 2 * n) {
                return Err(PeriodError::Params(format!("{name}: need m1 < m2 <= m3+1 <= 2n")));
            }
            b.zero_where(|i, j| (m1 < i && i + 1 < m2 && j < m2) || i > m3);
            if kind == "even.cusp.T" {
                b.run(1, m1, 1);
                b.term(m1 + 1, m2, q(1));
                b.run(m2, m3 - 1, 1);
            } else {
                // At m1 = 0 the terms through row m1 are empty.
                if m1 > 0 {
                    b.run(1, m1 - 1, 1);
                    b.term(m1, m2 - 1, q(1));
                }
                b.run(m2 - 1, m3 - 1, 1);
            }
            b.term(m3, 2 * n, q(1));
            b.term(m3, 2 * n + 2, a / q(2));
        }
        "even.cusp.V" | "even.cusp.Vpp" => {
            let k = name.int("k")?;
            let a = name.get("a")?.clone();
            check_range(name, "k", k, 1, n - 1)?;
            let top = n + k;
            if kind == "even.cusp.V" {
                b.zero_where(|i, j| (n < i && j <= top) || i > top);
                for i in n + 1..=top {
                    b.relation((i, 2 * n), -a.clone() / q(2), (i, 2 * n + 2))?;
                }
            } else {
                let (m1, m2) = (n - 1, n + k + 1);
                b.zero_where(|i, j| (m1 < i && i + 1 < m2 && j < m2) || i > top);
            }
            b.run(1, n - 1, 1);
            b.term(n, 2 * n, q(1));
            b.term(n, 2 * n + 2, a / q(2));
        }
        "even.cuspn.Up" | "even.cuspn.Upp" => {
            let mm = name.int("m")?;
            check_range(name, "m", mm, 0, n)?;
            b.zero_where(|i, j| mm < i && j <= mm + n + 1);
            // Both characters are a chain of n simple steps from 1 to 2n+1,
            // entering the block m+1..m+n+1 at its last, resp. first, index.
            if kind == "even.cuspn.Up" {
                if mm > 0 {
                    b.run(1, mm - 1, 1);
                    b.term(mm, mm + n + 1, q(1));
                }
                b.run(mm + n + 1, 2 * n, 1);
            } else {
                b.run(1, mm, 1);
                b.term(mm + 1, mm + n + 2, q(1));
                b.run(mm + n + 2, 2 * n, 1);
            }
        }
        _ => return Err(PeriodError::UnknownPeriod(name.to_string())),
    }
    b.finish().map_err(|e| PeriodError::Params(format!("{name}: {e}")))
}

fn odd_psi1(b: &mut Builder, n: usize) {
    b.run(1, n - 2, 1);
    b.term(n - 1, 2 * n, q(1));
    b.term(n - 1, 2 * n + 1, q(-1));
    b.run(n, 2 * n - 1, 1);
}

/// `N_ℓ`: the algebra `u_{ij} = 0` for `i > ℓ`.
pub fn n_ell(m: usize, ell: usize) -> NilSubalgebra {
    let mut b = Builder::new(m);
    b.zero_where(|i, _| i > ell);
    NilSubalgebra::solutions(m, &b.eqs).expect("N_ell is a subalgebra")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::qf;

    fn p(s: &str, m: usize) -> UniPeriod {
        make_standard_period(&s.parse().unwrap(), m).unwrap()
    }

    fn support(x: &UniPeriod) -> Vec<((usize, usize), Q)> {
        let amb = x.algebra().ambient();
        amb.coords()
            .iter()
            .zip(x.character().coeffs())
            .filter(|(_, c)| !c.is_zero())
            .map(|(&c, v)| (c, v.clone()))
            .collect()
    }

    #[test]
    fn descent_characters() {
        assert_eq!(support(&p("even.Psi[ell=2]", 9)), vec![((1, 2), q(1)), ((2, 5), q(1))]);
        assert_eq!(
            support(&p("even.PsiA[ell=2,a=3]", 9)),
            vec![((1, 2), q(1)), ((2, 4), q(1)), ((2, 6), qf(3, 2))]
        );
        assert_eq!(p("even.Psi[ell=2]", 9).algebra(), &n_ell(9, 2));
    }

    #[test]
    fn odd_u2_character() {
        let u2 = p("odd.U2", 8);
        assert_eq!(support(&u2), vec![((1, 3), q(1)), ((2, 4), q(1)), ((3, 5), q(1))]);
    }

    #[test]
    fn names_round_trip() {
        for s in ["odd.U5[k=2]", "even.U1[a=3/2]", "odd.U3", "odd.U9[k=1,l=2,a=-1]"] {
            let r: PeriodRef = s.parse().unwrap();
            assert_eq!(r.to_string(), s);
        }
        assert!("odd.U5[k=".parse::<PeriodRef>().is_err());
        assert!(make_standard_period(&"odd.U5[k=9]".parse().unwrap(), 8).is_err());
        assert!(make_standard_period(&"odd.U5[k=1]".parse().unwrap(), 9).is_err());
        assert!(make_standard_period(&"odd.Nope".parse().unwrap(), 8).is_err());
    }

    #[test]
    fn paper_identifications() {
        for n in 2..=3 {
            let m = 4 * n;
            assert_eq!(p("odd.U5[k=1]", m), p("odd.U4", m));
            assert_eq!(p("odd.U7t[k=1]", m), p("odd.U2", m));
            assert_eq!(p(&format!("odd.U7[k={}]", 2 * n - 1), m), p("odd.U3", m));
            assert_eq!(p(&"odd.cusp.Ur[k=1,r=1]".to_string(), m), p(&format!("odd.Psi[ell={n}]"), m));
            let e = 4 * n + 1;
            assert_eq!(p("even.U5[k=1,a=3]", e), p("even.U4[a=3]", e));
            assert_eq!(p(&format!("even.U7[k={n}]"), e), p("even.U1[a=0]", e));
        }
    }
}
