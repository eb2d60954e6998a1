//! Expander producing the shipped derivation scripts, one per parameter
//! instance. Conjugating elements that are only described up to "a
//! permutation and a toral element" are found by [`find_monomial_conjugator`]
//! at expansion time and written out explicitly.

use super::algebra::UniPeriod;
use super::script::{Claim, DerivationScript, MatrixSpec, PeriodSpec, Step};
use super::search::find_monomial_conjugator;
use super::standard::PeriodRef;
use super::calculus::{check_swap, period_from_values};
use crate::arith::{q, Q};
use rayon::prelude::*;

#[derive(Clone)]
struct Chain {
    m: usize,
    current: Option<UniPeriod>,
    steps: Vec<Step>,
    comments: Vec<String>,
}

fn spec(name: &str) -> PeriodSpec {
    PeriodSpec::Named(name.parse::<PeriodRef>().expect("expander names are well formed"))
}

impl Chain {
    fn new(m: usize, start: &str) -> Self {
        let current = spec(start).resolve(m).ok();
        Chain { m, current, steps: Vec::new(), comments: Vec::new() }
    }

    fn land(&mut self, target: &PeriodSpec) {
        self.current = target.resolve(self.m).ok();
    }

    /// Swaps to `name`, passing through intermediate periods exchanging one
    /// direction at a time when the direct swap is not certified.
    fn swap(&mut self, name: &str) {
        let t = spec(name);
        if let (Some(p), Ok(target)) = (&self.current, t.resolve(self.m)) {
            if check_swap(p, target.algebra(), target.character()).is_err() {
                match staged_swap(p, &target) {
                    Some(stages) => {
                        for s in stages {
                            self.steps.push(Step::Swap(PeriodSpec::inline_of(&s)));
                        }
                    }
                    None => self.comments.push(format!("no staged swap found towards {name}")),
                }
            }
        }
        self.land(&t);
        self.steps.push(Step::Swap(t));
    }

    fn fourier(&mut self, name: &str, gens: Vec<MatrixSpec>) {
        let t = spec(name);
        self.land(&t);
        self.steps.push(Step::Fourier { target: t, gens });
    }

    fn restrict(&mut self, name: &str, gens: Vec<MatrixSpec>) {
        let t = spec(name);
        self.land(&t);
        self.steps.push(Step::Restrict { target: t, gens });
    }

    fn conj(&mut self, g: MatrixSpec) {
        self.current = match (&self.current, g.build(self.m)) {
            (Some(p), Ok(b)) => match b {
                super::script::BuiltMatrix::Rational(x) => super::conjugate_period(&x, p).ok(),
                super::script::BuiltMatrix::Quadratic(x) => super::conjugate_period(&x, p).ok(),
            },
            _ => None,
        };
        self.steps.push(Step::Conj(g));
    }

    /// Conjugates to `name` by a searched monomial element. When none exists
    /// the identity is written, so that replay fails visibly at this point.
    fn conj_to(&mut self, name: &str) {
        let t = spec(name);
        let target = t.resolve(self.m).ok();
        let found = match (&self.current, &target) {
            (Some(p), Some(t)) => find_monomial_conjugator(p, t, None),
            _ => None,
        };
        match found {
            Some(gs) => {
                for g in gs {
                    self.steps.push(Step::Conj(g));
                }
                self.current = target;
            }
            None => {
                self.comments.push(format!("no monomial conjugator found towards {name}"));
                self.conj(MatrixSpec::Perm { perm: (1..=self.m).collect(), signs: vec![1; self.m] });
            }
        }
    }

    fn finish(self, name: String, start: &str, goal: &str, claim: Claim, parity: u8) -> DerivationScript {
        DerivationScript {
            name,
            m: self.m,
            start: spec(start),
            goal: spec(goal),
            claim,
            parity,
            comments: self.comments,
            steps: self.steps,
        }
    }
}

/// Intermediate periods `V_1, …, V_r` such that `p → V_1 → … → V_r → target`
/// is a chain of certified swaps, each exchanging at most two directions of
/// `p` modulo `p ∩ target` for directions of `target`.
fn staged_swap(p: &UniPeriod, target: &UniPeriod) -> Option<Vec<UniPeriod>> {
    let m = p.m();
    let c = p.algebra().intersect(target.algebra());
    let ys = p.algebra().space().complement_of(c.space());
    let xs = target.algebra().space().complement_of(c.space());
    if ys.len() != xs.len() {
        return None;
    }
    let mut kept_y: Vec<bool> = vec![true; ys.len()];
    let mut took_x: Vec<bool> = vec![false; xs.len()];
    let mut current = p.clone();
    let mut out = Vec::new();
    let pick = |flags: &[bool], want: bool| -> Vec<usize> {
        flags.iter().enumerate().filter(|(_, &f)| f == want).map(|(i, _)| i).collect()
    };
    loop {
        let (yl, xl) = (pick(&kept_y, true), pick(&took_x, false));
        if yl.is_empty() {
            return Some(out);
        }
        let mut moves: Vec<(Vec<usize>, Vec<usize>)> = Vec::new();
        for &y in &yl {
            for &x in &xl {
                moves.push((vec![y], vec![x]));
            }
        }
        for (a, &y1) in yl.iter().enumerate() {
            for &y2 in &yl[a + 1..] {
                for (b, &x1) in xl.iter().enumerate() {
                    for &x2 in &xl[b + 1..] {
                        moves.push((vec![y1, y2], vec![x1, x2]));
                    }
                }
            }
        }
        let mut advanced = false;
        for (dy, dx) in moves {
            if dy.len() == yl.len() {
                // The last move lands on the target itself.
                if check_swap(&current, target.algebra(), target.character()).is_ok() {
                    return Some(out);
                }
                continue;
            }
            let mut vectors: Vec<Vec<Q>> = c.basis().to_vec();
            let mut values: Vec<Q> = vectors.iter().map(|b| target.eval(b)).collect();
            for (i, y) in ys.iter().enumerate() {
                if kept_y[i] && !dy.contains(&i) {
                    values.push(p.eval(y));
                    vectors.push(y.clone());
                }
            }
            for (i, x) in xs.iter().enumerate() {
                if took_x[i] || dx.contains(&i) {
                    values.push(target.eval(x));
                    vectors.push(x.clone());
                }
            }
            let Ok(v) = period_from_values(m, &vectors, &values) else { continue };
            if check_swap(&current, v.algebra(), v.character()).is_ok() {
                for i in &dy {
                    kept_y[*i] = false;
                }
                for i in &dx {
                    took_x[*i] = true;
                }
                out.push(v.clone());
                current = v;
                advanced = true;
                break;
            }
        }
        if !advanced {
            return None;
        }
    }
}

fn elem(i: usize, j: usize, a: i64) -> MatrixSpec {
    MatrixSpec::Elem { i, j, a: q(a) }
}

/// Indices `i` in `lo..hi` with `i ≡ r (mod 2)`, as a transposition list
/// for an ambient of size `m` (mirror duplicates dropped).
fn transpositions(lo: usize, hi: usize, r: usize, m: usize) -> Vec<usize> {
    (lo.max(1)..hi).filter(|i| i % 2 == r % 2 && *i <= m / 2).collect()
}

fn odd_u1u2(n: usize, dagger: bool) -> DerivationScript {
    let m = 4 * n;
    let mut c = Chain::new(m, "odd.U1");
    c.swap("odd.U4");
    for k in 1..n {
        c.conj(MatrixSpec::Transpose(transpositions(n - k, n + k, n - k, m)));
        c.swap(&format!("odd.U5[k={}]", k + 1));
    }
    c.fourier(if dagger { "odd.U2pp" } else { "odd.U2p" }, Vec::new());
    if dagger {
        // The sign of the unipotent is fixed by trial; a toral element
        // normalizes the signs after the reflection.
        let tried = [1, -1].map(|s| {
            let mut t = c.clone();
            for i in 2..=n {
                t.conj(elem(2 * i - 1, 2 * i - 2, s));
            }
            t.conj(MatrixSpec::Dagger);
            t.conj_to("odd.U2");
            t
        });
        let [plus, minus] = tried;
        c = if plus.comments.len() <= minus.comments.len() { plus } else { minus };
        c.finish(format!("odd_u1_divides_dagger_u2_n{n}"), "odd.U1", "odd.U2", Claim::Divides, 1)
    } else {
        for i in 2..=n {
            c.conj(elem(2 * i - 1, 2 * i - 2, -1));
        }
        c.finish(format!("odd_u1_divides_u2_n{n}"), "odd.U1", "odd.U2", Claim::Divides, 0)
    }
}

/// The permutation relating the two characters of `U_7^{(k)}`.
fn odd_u7_flip(k: usize, n: usize) -> MatrixSpec {
    MatrixSpec::Transpose(((k + 1)..=2 * n).filter(|i| i % 2 == (k + 1) % 2).collect())
}

fn odd_u2u3deep(n: usize) -> DerivationScript {
    let m = 4 * n;
    let mut c = Chain::new(m, "odd.U2");
    for k in 1..=2 * n - 2 {
        c.conj(odd_u7_flip(k, n));
        c.conj_to(&format!("odd.U7[k={k}]"));
        if k % 2 == 1 {
            c.swap(&format!("odd.U7t[k={}]", k + 1));
        } else {
            c.swap(&format!("odd.U8t[k={}]", k + 1));
            c.fourier(&format!("odd.U7t[k={}]", k + 1), Vec::new());
        }
    }
    c.conj(odd_u7_flip(2 * n - 1, n));
    c.conj_to("odd.U3");
    c.finish(format!("odd_u2u3deep_n{n}"), "odd.U2", "odd.U3", Claim::Spans, (n % 2) as u8)
}

fn odd_fexpdeeper(n: usize, k: usize, a: i64) -> DerivationScript {
    let m = 4 * n;
    let ell = n + k / 2;
    let start = format!("odd.PsiA[ell={ell},a={a}]");
    let goal = format!("odd.U7a[k={},a={a}]", k + 1);
    let mut c = Chain::new(m, &start);
    if ell < 2 * n - 1 {
        let gens = (ell + 1..2 * n).map(|j| elem(j, 2 * n + 1, 1)).collect();
        c.restrict(&format!("odd.U10[k={},l=1,a={a}]", ell - 1), gens);
        c.conj_to(&format!("odd.U9[k={},l=1,a={a}]", ell - 1));
        for big_k in ((k + 2)..ell).rev() {
            let l = ell - big_k;
            c.fourier(&format!("odd.U11[k={},l={},a={a}]", big_k - 1, l + 1), Vec::new());
            c.swap(&format!("odd.U10[k={},l={},a={a}]", big_k - 1, l + 1));
            c.conj_to(&format!("odd.U9[k={},l={},a={a}]", big_k - 1, l + 1));
        }
        c.fourier(&goal, Vec::new());
    }
    c.finish(format!("odd_fexpdeeper_n{n}_k{k}_a{a}"), &start, &goal, Claim::Divides, 0)
}

/// `(U_3,ψ_3) → (U_4,ψ_4)` through the groups `U_4^{(ℓ)}`.
fn odd_u3u4_steps(c: &mut Chain, n: usize, k: usize) {
    let z = |row: usize| (1..=k).map(|i| elem(row, i, 1)).collect::<Vec<_>>();
    c.fourier(&format!("odd.cusp.U4l[k={k},l={}]", n - 1), z(k + n - 1));
    for l in (1..n - 1).rev() {
        c.fourier(&format!("odd.cusp.U4l[k={k},l={l}]"), z(k + l));
    }
}

fn odd_block_conjugator(n: usize, k: usize) -> MatrixSpec {
    let m = 4 * n;
    let mut perm: Vec<usize> = (1..=m).collect();
    for j in 1..n {
        perm[j - 1] = k + j;
    }
    for j in 1..=k {
        perm[n - 2 + j] = j;
    }
    for i in 1..=n - 1 + k {
        perm[m - i] = m + 1 - perm[i - 1];
    }
    MatrixSpec::Perm { perm, signs: vec![1; m] }
}

fn odd_cuspidality(n: usize, k: usize) -> DerivationScript {
    let m = 4 * n;
    let start = format!("odd.cusp.U1[k={k}]");
    let goal = format!("odd.Psi[ell={}]", n + k - 1);
    let mut c = Chain::new(m, &start);
    c.restrict(&format!("odd.cusp.U2[k={k}]"), Vec::new());
    c.conj(odd_block_conjugator(n, k));
    odd_u3u4_steps(&mut c, n, k);
    for r in (1..=k).rev() {
        c.fourier(&format!("odd.cusp.Ur[k={k},r={r}]"), Vec::new());
    }
    c.finish(format!("odd_cuspidality_n{n}_k{k}"), &start, &goal, Claim::Spanned, 0)
}

fn odd_u3u4(n: usize, k: usize) -> DerivationScript {
    let start = format!("odd.cusp.U3[k={k}]");
    let goal = format!("odd.cusp.Ur[k={k},r={}]", k + 1);
    let mut c = Chain::new(4 * n, &start);
    odd_u3u4_steps(&mut c, n, k);
    c.finish(format!("odd_u3u4_n{n}_k{k}"), &start, &goal, Claim::Equivalent, 0)
}

/// `U_5^{(n−1)} → U_2'`: the transpositions of the next exchange round
/// together with the flip `2n ↔ 2n+2`.
fn even_u2_prime_conjugator(n: usize) -> MatrixSpec {
    let m = 4 * n + 1;
    let mut perm: Vec<usize> = (1..=m).collect();
    let mut swap = |x: usize, y: usize| {
        perm.swap(x - 1, y - 1);
    };
    for i in (2..2 * n - 1).step_by(2) {
        swap(i, i + 1);
        swap(m - i, m + 1 - i);
    }
    swap(2 * n, 2 * n + 2);
    MatrixSpec::Perm { perm, signs: vec![1; m] }
}

fn even_u1_to_u2(c: &mut Chain, n: usize, a: i64) {
    let m = 4 * n + 1;
    c.swap(&format!("even.U4[a={a}]"));
    for k in 1..n - 1 {
        c.conj(MatrixSpec::Transpose(transpositions(n - k, n + k, n - k + 1, m)));
        c.swap(&format!("even.U5[k={},a={a}]", k + 1));
    }
    c.conj(even_u2_prime_conjugator(n));
    c.swap(&format!("even.U2[a={a}]"));
}

fn even_u1u2(n: usize, a: i64) -> DerivationScript {
    let start = format!("even.U1[a={a}]");
    let goal = format!("even.U2[a={a}]");
    let mut c = Chain::new(4 * n + 1, &start);
    even_u1_to_u2(&mut c, n, a);
    c.finish(format!("even_u1a_sim_u2a_n{n}_a{a}"), &start, &goal, Claim::Equivalent, 0)
}

fn even_u2u3deep(n: usize) -> DerivationScript {
    let m = 4 * n + 1;
    let mut c = Chain::new(m, "even.U2[a=0]");
    // Back along the exchange chain to U_1^0 = U_7^{(n)}.
    c.swap("even.U2p[a=0]");
    c.conj(even_u2_prime_conjugator(n));
    for k in (1..n - 1).rev() {
        c.swap(&format!("even.U6[k={},a=0]", k + 1));
        c.conj(MatrixSpec::Transpose(transpositions(n - k, n + k, n - k + 1, m)));
    }
    c.swap("even.U1[a=0]");
    for k in n..2 * n - 1 {
        c.conj_to(&format!("even.U9[k={}]", k + 1));
        c.swap(&format!("even.U9b[k={}]", k + 1));
        c.fourier(&format!("even.U8t[k={}]", k + 1), Vec::new());
        c.conj_to(&format!("even.U8[k={}]", k + 1));
        if k + 1 < 2 * n - 1 {
            c.swap(&format!("even.U7[k={}]", k + 1));
        }
    }
    c.fourier("even.U3", Vec::new());
    c.finish(format!("even_u2u3deep_n{n}"), "even.U2[a=0]", "even.U3", Claim::Spans, 0)
}

fn even_cuspidality(n: usize, k: usize, a: i64) -> DerivationScript {
    let start = format!("even.cusp.V[k={k},a={a}]");
    let goal = format!("even.PsiA[ell={},a={a}]", n + k);
    let mut c = Chain::new(4 * n + 1, &start);
    let t = |kind: &str, m1: usize, m2: usize| format!("even.cusp.{kind}[m1={m1},m2={m2},m3={},a={a}]", n + k);
    c.swap(&format!("even.cusp.Vpp[k={k},a={a}]"));
    c.conj_to(&t("Tp", n - 1, n + k + 1));
    for m1 in (1..n).rev() {
        let m2 = m1 + k + 2;
        c.swap(&t("T", m1 - 1, m2 - 1));
        c.conj_to(&t("Tp", m1 - 1, m2 - 1));
    }
    for m2 in (3..=k + 2).rev() {
        let gens = (1..m2 - 2).map(|i| elem(i, m2 - 2, 1)).collect();
        c.fourier(&t("Tp", 0, m2 - 1), gens);
    }
    c.finish(format!("even_cuspidality_n{n}_k{k}_a{a}"), &start, &goal, Claim::Spanned, 0)
}

fn even_cuspidality_gl1(n: usize) -> DerivationScript {
    let start = format!("even.cuspn.Up[m={n}]");
    let goal = "even.cuspn.Up[m=0]".to_string();
    let mut c = Chain::new(4 * n + 1, &start);
    for mm in (1..=n).rev() {
        c.swap(&format!("even.cuspn.Upp[m={}]", mm - 1));
        c.conj_to(&format!("even.cuspn.Up[m={}]", mm - 1));
    }
    c.finish(format!("even_cuspidality_n{n}_gl1"), &start, &goal, Claim::Equivalent, 0)
}

fn even_theta(n: usize) -> DerivationScript {
    let mut c = Chain::new(4 * n + 1, "even.U2[a=0]");
    c.steps.push(Step::Axiom {
        citation: "span relation for U2 obtained from theta functions on the Klingen parabolic of GSp4".into(),
        target: Some(spec("even.U2[a=1]")),
    });
    c.finish(format!("even_theta_n{n}"), "even.U2[a=0]", "even.U2[a=1]", Claim::Spanned, 0)
}

/// Every shipped script for the given ranks and nonzero parameters `a`.
pub fn appendix_scripts(ns: &[usize], a_values: &[i64]) -> Vec<DerivationScript> {
    type Job = Box<dyn Fn() -> DerivationScript + Send + Sync>;
    let mut jobs: Vec<Job> = Vec::new();
    for &n in ns {
        jobs.push(Box::new(move || odd_u1u2(n, false)));
        jobs.push(Box::new(move || odd_u1u2(n, true)));
        jobs.push(Box::new(move || odd_u2u3deep(n)));
        for k in (2..=2 * n - 2).step_by(2) {
            for &a in a_values {
                jobs.push(Box::new(move || odd_fexpdeeper(n, k, a)));
            }
        }
        for k in 1..=n {
            jobs.push(Box::new(move || odd_cuspidality(n, k)));
            jobs.push(Box::new(move || odd_u3u4(n, k)));
        }
        jobs.push(Box::new(move || even_u1u2(n, 0)));
        for &a in a_values {
            jobs.push(Box::new(move || even_u1u2(n, a)));
        }
        jobs.push(Box::new(move || even_u2u3deep(n)));
        for k in 1..n {
            for &a in a_values {
                jobs.push(Box::new(move || even_cuspidality(n, k, a)));
            }
        }
        jobs.push(Box::new(move || even_cuspidality_gl1(n)));
        jobs.push(Box::new(move || even_theta(n)));
    }
    jobs.par_iter().map(|j| j()).collect()
}
