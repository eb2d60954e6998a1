//! Search for a monomial element of `O_m` (a mirror-compatible permutation
//! followed by a diagonal element) conjugating one period to another. Used to
//! write out CONJ steps whose element is not named explicitly.

use super::algebra::UniPeriod;
use super::script::{BuiltMatrix, MatrixSpec};
use crate::arith::Q;
use num::{One, Zero};
use std::collections::VecDeque;

/// All permutations of `1..=m` commuting with `i ↦ m+1−i`, identity first.
pub fn mirror_permutations(m: usize) -> Vec<Vec<usize>> {
    let h = m / 2;
    let mut out = Vec::new();
    let mut pi: Vec<usize> = (0..h).collect();
    loop {
        for flips in 0u32..(1 << h) {
            let mut sigma = vec![0; m];
            for (k, &p) in pi.iter().enumerate() {
                let (lo, hi) = (p + 1, m - p);
                let (a, b) = if flips >> k & 1 == 1 { (hi, lo) } else { (lo, hi) };
                sigma[k] = a;
                sigma[m - 1 - k] = b;
            }
            if m % 2 == 1 {
                sigma[h] = h + 1;
            }
            out.push(sigma);
        }
        if !next_permutation(&mut pi) {
            break;
        }
    }
    out
}

fn next_permutation(v: &mut [usize]) -> bool {
    let n = v.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

/// Diagonal `d` with `d_i d_{m+1−i} = 1` such that conjugating `p` by
/// `diag(d)` gives `target`, assuming both live on the same algebra.
fn torus_fix(p: &UniPeriod, target: &UniPeriod) -> Option<Vec<Q>> {
    let m = p.m();
    let amb = p.algebra().ambient();
    let (cp, ct) = (p.character().coeffs(), target.character().coeffs());
    // Unknowns t_1..t_h; d_i = t_i, d_{m+1-i} = 1/t_i, middle 1.
    // (g·ψ) has coefficient c_ij·d_i/d_j on u_ij.
    let h = m / 2;
    let var = |i: usize| -> Option<(usize, i32)> {
        if i <= h {
            Some((i - 1, 1))
        } else if m % 2 == 1 && i == h + 1 {
            None
        } else {
            Some((m - i, -1))
        }
    };
    // Each constraint: prod t_v^e = r.
    let mut edges: Vec<Vec<(usize, i32, i32, Q)>> = vec![Vec::new(); h];
    let mut unary: Vec<(usize, i32, Q)> = Vec::new();
    for (k, &(i, j)) in amb.coords().iter().enumerate() {
        match (cp[k].is_zero(), ct[k].is_zero()) {
            (true, true) => continue,
            (false, false) => {}
            _ => return None,
        }
        let r = &ct[k] / &cp[k];
        match (var(i), var(j)) {
            (Some((a, ea)), Some((b, eb))) => {
                // t_a^ea * t_b^(-eb) = r
                let eb = -eb;
                if a == b {
                    let e = ea + eb;
                    if e == 0 {
                        if !r.is_one() {
                            return None;
                        }
                    } else {
                        unary.push((a, e, r));
                    }
                } else {
                    edges[a].push((b, ea, eb, r.clone()));
                    edges[b].push((a, eb, ea, r));
                }
            }
            (Some((a, ea)), None) => unary.push((a, ea, r)),
            (None, Some((b, eb))) => unary.push((b, -eb, r)),
            (None, None) => unreachable!("no coordinate pairs the middle index with itself"),
        }
    }
    let pow = |x: &Q, e: i32| if e >= 0 { x.pow(e) } else { x.recip().pow(-e) };
    let mut t: Vec<Option<Q>> = vec![None; h];
    for &(a, e, ref r) in &unary {
        if e.abs() == 1 && t[a].is_none() {
            t[a] = Some(pow(r, e));
        }
    }
    let mut queue: VecDeque<usize> = (0..h).filter(|&a| t[a].is_some()).collect();
    let mut next_root = 0;
    loop {
        while let Some(a) = queue.pop_front() {
            let ta = t[a].clone().expect("assigned");
            for (b, ea, eb, r) in &edges[a] {
                if t[*b].is_none() {
                    // t_a^ea · t_b^eb = r with eb = ±1
                    t[*b] = Some(pow(&(r / pow(&ta, *ea)), *eb));
                    queue.push_back(*b);
                }
            }
        }
        while next_root < h && t[next_root].is_some() {
            next_root += 1;
        }
        if next_root == h {
            break;
        }
        t[next_root] = Some(Q::one());
        queue.push_back(next_root);
    }
    let t: Vec<Q> = t.into_iter().map(|x| x.expect("assigned")).collect();
    let mut d = vec![Q::one(); m];
    for (a, ta) in t.iter().enumerate() {
        if ta.is_zero() {
            return None;
        }
        d[a] = ta.clone();
        d[m - 1 - a] = ta.recip();
    }
    Some(d)
}

/// The first `(σ, d)` in a fixed enumeration order with
/// `diag(d)·σ·p = target`, as CONJ specs. `orientation` restricts to
/// permutations with `det = +1` (`Some(false)`) or `det = −1` (`Some(true)`).
pub fn find_monomial_conjugator(
    p: &UniPeriod,
    target: &UniPeriod,
    orientation: Option<bool>,
) -> Option<Vec<MatrixSpec>> {
    let m = p.m();
    if p.dim() != target.dim() || target.m() != m {
        return None;
    }
    let amb = p.algebra().ambient();
    let support: Vec<Vec<(usize, usize)>> = p
        .algebra()
        .basis()
        .iter()
        .map(|b| amb.coords().iter().zip(b).filter(|(_, v)| !v.is_zero()).map(|(c, _)| *c).collect())
        .collect();
    for sigma in mirror_permutations(m) {
        let upper = support.iter().flatten().all(|&(i, j)| sigma[i - 1] < sigma[j - 1]);
        if !upper {
            continue;
        }
        let spec = MatrixSpec::Perm { perm: sigma.clone(), signs: vec![1; m] };
        let Ok(g) = spec.build(m) else { continue };
        if let Some(want) = orientation {
            if g.reverses_orientation() != want {
                continue;
            }
        }
        let Ok(moved) = conjugate(&g, p) else { continue };
        if moved.algebra() != target.algebra() {
            continue;
        }
        let mut steps = Vec::new();
        if sigma.iter().enumerate().any(|(k, &s)| s != k + 1) {
            steps.push(spec);
        }
        if moved == *target {
            return Some(steps);
        }
        let Some(d) = torus_fix(&moved, target) else { continue };
        let inverse: Vec<Q> = d.iter().map(|x| x.recip()).collect();
        for d in [d, inverse] {
            let diag = MatrixSpec::Diag(d);
            let Ok(dm) = diag.build(m) else { continue };
            if conjugate(&dm, &moved).ok().as_ref() == Some(target) {
                steps.push(diag);
                return Some(steps);
            }
        }
    }
    None
}

fn conjugate(g: &BuiltMatrix, p: &UniPeriod) -> Result<UniPeriod, super::PeriodError> {
    match g {
        BuiltMatrix::Rational(g) => super::algebra::conjugate_period(g, p),
        BuiltMatrix::Quadratic(g) => super::algebra::conjugate_period(g, p),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::periods::{make_standard_period, PeriodRef};

    #[test]
    fn group_order() {
        assert_eq!(mirror_permutations(8).len(), 384);
        assert_eq!(mirror_permutations(9).len(), 384);
        assert_eq!(mirror_permutations(9)[0], (1..=9).collect::<Vec<_>>());
    }

    #[test]
    fn recovers_a_transposition() {
        let p = make_standard_period(&"odd.U5[k=1]".parse::<PeriodRef>().unwrap(), 8).unwrap();
        let t = make_standard_period(&"odd.U6[k=2]".parse::<PeriodRef>().unwrap(), 8).unwrap();
        let steps = find_monomial_conjugator(&p, &t, None).expect("conjugate");
        assert!(!steps.is_empty());
    }
}
