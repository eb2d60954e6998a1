//! Centered-permutation models of double cosets `(W ∩ P)\W/(W ∩ Q_ℓ)` in the
//! Weyl groups of `SO_{4n}` and `SO_{4n+1}`, their minimal representatives and
//! the permutation conditions deciding which filtration pieces of a Jacquet
//! module can survive a general-position character.

use rayon::prelude::*;
use std::collections::HashMap;
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CosetError {
    #[error("not a centered permutation of size {0}: {1:?}")]
    NotCentered(usize, Vec<usize>),
    #[error("inconsistent parameters: {0}")]
    Parameters(String),
}

/// A permutation `w` of `{1..m}` with `w(m+1−i) = m+1−w(i)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CenteredPermutation {
    values: Vec<usize>,
}

impl CenteredPermutation {
    pub fn new(values: Vec<usize>) -> Result<Self, CosetError> {
        let m = values.len();
        let mut seen = vec![false; m + 1];
        for (i, &v) in values.iter().enumerate() {
            if v == 0 || v > m || seen[v] || values[m - 1 - i] != m + 1 - v {
                return Err(CosetError::NotCentered(m, values));
            }
            seen[v] = true;
        }
        Ok(CenteredPermutation { values })
    }

    pub fn identity(m: usize) -> Self {
        CenteredPermutation {
            values: (1..=m).collect(),
        }
    }

    pub fn size(&self) -> usize {
        self.values.len()
    }

    pub fn values(&self) -> &[usize] {
        &self.values
    }

    /// `w(i)`, 1-based.
    pub fn at(&self, i: usize) -> usize {
        self.values[i - 1]
    }

    pub fn inverse(&self) -> Self {
        let mut v = vec![0; self.size()];
        for (i, &x) in self.values.iter().enumerate() {
            v[x - 1] = i + 1;
        }
        CenteredPermutation { values: v }
    }

    /// `self ∘ o`.
    pub fn compose(&self, o: &Self) -> Self {
        CenteredPermutation {
            values: o.values.iter().map(|&x| self.values[x - 1]).collect(),
        }
    }

    /// Sign of the permutation.
    pub fn sign(&self) -> i8 {
        let mut seen = vec![false; self.size()];
        let mut s = 1i8;
        for start in 0..self.size() {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut k = start;
            while !seen[k] {
                seen[k] = true;
                k = self.values[k] - 1;
                len += 1;
            }
            if len % 2 == 0 {
                s = -s;
            }
        }
        s
    }

    /// Coxeter length: `#{(i, j) : i < j ≤ m−i, w(i) > w(j)}`.
    pub fn length(&self) -> usize {
        let m = self.size();
        let mut count = 0;
        for i in 1..=m {
            for j in i + 1..=m.saturating_sub(i) {
                if self.at(i) > self.at(j) {
                    count += 1;
                }
            }
        }
        count
    }
}

impl fmt::Display for CenteredPermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.values)
    }
}

/// A standard Levi of `SO_m`: `GL` blocks of the given sizes starting at
/// index 1, then a middle orthogonal block, then the mirrored `GL` blocks.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LeviShape {
    pub gl_blocks: Vec<usize>,
    pub middle: usize,
}

impl LeviShape {
    pub fn size(&self) -> usize {
        2 * self.gl_blocks.iter().sum::<usize>() + self.middle
    }

    /// `Q_ℓ`: `ℓ` blocks `GL_1` and a middle block of size `m − 2ℓ`.
    pub fn q_ell(m: usize, ell: usize) -> Self {
        LeviShape {
            gl_blocks: vec![1; ell],
            middle: m - 2 * ell,
        }
    }

    /// The blocks of indices, mirrors included, as inclusive ranges; the
    /// middle block is flagged.
    fn ranges(&self) -> Vec<(usize, usize, bool)> {
        let m = self.size();
        let mut out = Vec::new();
        let mut start = 1;
        for &b in &self.gl_blocks {
            out.push((start, start + b - 1, false));
            out.push((m + 2 - start - b, m + 1 - start, false));
            start += b;
        }
        if self.middle > 0 {
            out.push((start, start + self.middle - 1, true));
        }
        out
    }

    /// Simple reflections of the Levi Weyl group as centered permutations.
    pub fn generators(&self) -> Vec<CenteredPermutation> {
        let m = self.size();
        let swap = |pairs: &[(usize, usize)]| {
            let mut v: Vec<usize> = (1..=m).collect();
            for &(a, b) in pairs {
                v.swap(a - 1, b - 1);
            }
            CenteredPermutation { values: v }
        };
        let mut gens = Vec::new();
        for (a, b, mid) in self.ranges() {
            if mid {
                let k = (b - a).div_ceil(2);
                for i in a..a + k.saturating_sub(1) {
                    gens.push(swap(&[(i, i + 1), (m - i, m + 1 - i)]));
                }
                if (b - a + 1) % 2 == 1 && k >= 1 {
                    gens.push(swap(&[(a + k - 1, a + k + 1)]));
                } else if k >= 2 {
                    let c = a + k - 1;
                    gens.push(swap(&[(c - 1, c + 1), (c, c + 2)]));
                }
            } else if a <= m / 2 {
                for i in a..b {
                    gens.push(swap(&[(i, i + 1), (m - i, m + 1 - i)]));
                }
            }
        }
        gens
    }
}

/// Whether `f` is increasing on the index block `a..=b`; for an even middle
/// block (type D) the central pair may be exchanged.
fn increasing_on(f: &[usize], a: usize, b: usize, central_swap: bool) -> bool {
    let len = b + 1 - a;
    let c = a + len / 2 - 1;
    for i in a..=b {
        for j in i + 1..=b {
            let exempt = central_swap && len.is_multiple_of(2) && i == c && j == c + 1;
            if !exempt && f[i - 1] > f[j - 1] {
                return false;
            }
        }
    }
    true
}

/// `w` is the shortest element of `W_L·w`.
pub fn left_minimal(w: &CenteredPermutation, shape: &LeviShape) -> bool {
    let inv = w.inverse();
    shape
        .ranges()
        .into_iter()
        .all(|(a, b, mid)| increasing_on(&inv.values, a, b, mid))
}

/// `w` is the shortest element of `w·W_L`.
pub fn right_minimal(w: &CenteredPermutation, shape: &LeviShape) -> bool {
    shape
        .ranges()
        .into_iter()
        .all(|(a, b, mid)| increasing_on(&w.values, a, b, mid))
}

/// The parabolic `P` of the filtration.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CosetCase {
    /// `G_{4n}`, `P = P_{2^{2n}}`, Levi `GL_2^{2n}` in the centered model.
    Odd,
    /// `G_{4n+1}`, `P_1` with Levi `GL_2^n × GL_1`.
    EvenP1,
    /// `G_{4n+1}`, `P_2` with Levi `GL_2^{n−1} × GL_1 × GSpin_3`.
    EvenP2,
    /// `G_{4n+1}`, `P_3` with Levi `GL_2^{n−1} × GSp_4`.
    EvenP3,
}

impl CosetCase {
    pub fn ambient(self, n: usize) -> usize {
        match self {
            CosetCase::Odd => 4 * n,
            _ => 4 * n + 1,
        }
    }

    pub fn shape(self, n: usize) -> LeviShape {
        match self {
            CosetCase::Odd => LeviShape {
                gl_blocks: vec![2; n],
                middle: 0,
            },
            CosetCase::EvenP1 => LeviShape {
                gl_blocks: vec![2; n],
                middle: 1,
            },
            CosetCase::EvenP2 => {
                let mut gl_blocks = vec![2; n - 1];
                gl_blocks.push(1);
                LeviShape { gl_blocks, middle: 3 }
            }
            CosetCase::EvenP3 => LeviShape {
                gl_blocks: vec![2; n - 1],
                middle: 5,
            },
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            CosetCase::Odd => "odd",
            CosetCase::EvenP1 => "even-P1",
            CosetCase::EvenP2 => "even-P2",
            CosetCase::EvenP3 => "even-P3",
        }
    }
}

fn check_params(m: usize, shape: &LeviShape, ell: usize) -> Result<(), CosetError> {
    if shape.size() != m {
        return Err(CosetError::Parameters(format!("shape {shape:?} has size {} not {m}", shape.size())));
    }
    if ell == 0 || 2 * ell >= m {
        return Err(CosetError::Parameters(format!("need 1 <= ell < m/2, got ell={ell}, m={m}")));
    }
    Ok(())
}

/// All minimal representatives of `(W ∩ P)\W/(W ∩ Q_ℓ)` in `W(SO_m)`, in
/// lexicographic order. For even `m` only determinant-one permutations are
/// used.
///
/// Right-minimality forces `w` to be increasing on the middle block of
/// `Q_ℓ`, so `w` is fixed by `w(1), …, w(ℓ)`; these are chosen by
/// backtracking, pruned by left-minimality.
pub fn enumerate_minimal_reps(m: usize, shape: &LeviShape, ell: usize) -> Result<Vec<CenteredPermutation>, CosetError> {
    check_params(m, shape, ell)?;
    let q = LeviShape::q_ell(m, ell);
    // Block predecessor of each value under the P blocks: `v` must appear
    // to the right of `pred[v]` in `w`.
    let mut pred = vec![None; m + 1];
    for (a, b, mid) in shape.ranges() {
        let len = b + 1 - a;
        for v in a + 1..=b {
            let exempt = mid && len % 2 == 0 && v == a + len / 2;
            if !exempt {
                pred[v] = Some(v - 1);
            }
        }
    }
    let firsts: Vec<usize> = (1..=m).filter(|&v| 2 * v != m + 1).collect();
    let mut out: Vec<CenteredPermutation> = firsts
        .par_iter()
        .flat_map_iter(|&v| {
            let mut acc = Vec::new();
            let mut prefix = vec![v];
            extend(m, ell, shape, &q, &pred, &mut prefix, &mut acc);
            acc
        })
        .collect();
    out.sort();
    Ok(out)
}

fn extend(
    m: usize,
    ell: usize,
    shape: &LeviShape,
    q: &LeviShape,
    pred: &[Option<usize>],
    prefix: &mut Vec<usize>,
    acc: &mut Vec<CenteredPermutation>,
) {
    let last = *prefix.last().expect("nonempty");
    if let Some(p) = pred[last] {
        if !prefix[..prefix.len() - 1].contains(&p) {
            return;
        }
    }
    if prefix.len() == ell {
        if let Some(w) = complete(m, prefix) {
            if left_minimal(&w, shape) && right_minimal(&w, q) {
                acc.push(w);
            }
        }
        return;
    }
    for v in 1..=m {
        if 2 * v == m + 1 || prefix.contains(&v) || prefix.contains(&(m + 1 - v)) {
            continue;
        }
        prefix.push(v);
        extend(m, ell, shape, q, pred, prefix, acc);
        prefix.pop();
    }
}

/// Fills the middle positions in increasing order; for even `m`, exchanges the
/// central pair if needed to reach determinant one.
fn complete(m: usize, prefix: &[usize]) -> Option<CenteredPermutation> {
    let ell = prefix.len();
    let mut values = vec![0; m];
    let mut used = vec![false; m + 1];
    for (i, &v) in prefix.iter().enumerate() {
        values[i] = v;
        values[m - 1 - i] = m + 1 - v;
        used[v] = true;
        used[m + 1 - v] = true;
    }
    let rest: Vec<usize> = (1..=m).filter(|&v| !used[v]).collect();
    values[ell..m - ell].copy_from_slice(&rest);
    let mut w = CenteredPermutation { values };
    if m.is_multiple_of(2) && w.sign() != 1 {
        let c = m / 2;
        w.values.swap(c - 1, c);
    }
    (m % 2 == 1 || w.sign() == 1).then_some(w)
}

/// Which indices `i_0` may witness the second survival condition.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum I0Mode {
    /// `ℓ+1 ≤ i_0 ≤ ⌊m/2⌋`: the character is in general position and its
    /// orbit does not contain the central-entry-only form.
    General,
    /// Also the central index `(m+1)/2` for odd `m`: the orbit contains a
    /// character whose tail vector is supported on the central entry, which
    /// happens exactly when `Invt = □`.
    WithCentre,
}

/// `true` iff `w` does not force the Jacquet module of its filtration piece
/// to vanish: `w(1) > … > w(ℓ)`, and some `i_0` has `w(ℓ) > w(i_0)` and
/// `w(ℓ) > w(m+1−i_0)`.
pub fn survives_general_position(w: &CenteredPermutation, ell: usize, mode: I0Mode) -> bool {
    let m = w.size();
    if ell == 0 || 2 * ell >= m {
        return false;
    }
    if (1..ell).any(|i| w.at(i) < w.at(i + 1)) {
        return false;
    }
    let top = w.at(ell);
    let mut candidates: Vec<usize> = (ell + 1..=m / 2).collect();
    if mode == I0Mode::WithCentre && m % 2 == 1 {
        candidates.push(m.div_ceil(2));
    }
    candidates
        .into_iter()
        .any(|i0| top > w.at(i0) && top > w.at(m + 1 - i0))
}

pub fn find_survivors(m: usize, shape: &LeviShape, ell: usize, mode: I0Mode) -> Result<Vec<CenteredPermutation>, CosetError> {
    Ok(enumerate_minimal_reps(m, shape, ell)?
        .into_iter()
        .filter(|w| survives_general_position(w, ell, mode))
        .collect())
}

/// Survivors for a coarse parabolic read off a finer filtration: the
/// minimal representatives of `(W ∩ P_coarse)\W/(W ∩ Q_ℓ)` whose double coset
/// contains a surviving representative for `P_fine`.
pub fn find_survivors_refined(
    m: usize,
    coarse: &LeviShape,
    fine: &LeviShape,
    ell: usize,
    mode: I0Mode,
) -> Result<Vec<CenteredPermutation>, CosetError> {
    check_params(m, coarse, ell)?;
    let q = LeviShape::q_ell(m, ell);
    let mut out: Vec<CenteredPermutation> = find_survivors(m, fine, ell, mode)?
        .iter()
        .map(|w| shortest_in_double_coset(w, coarse, &q))
        .collect();
    out.sort();
    out.dedup();
    Ok(out)
}

/// Survivors for one of the standard cases at rank `n`; `P_3` is read off the
/// `P_2` filtration, which refines it.
pub fn case_survivors(n: usize, case: CosetCase, ell: usize, mode: I0Mode) -> Result<Vec<CenteredPermutation>, CosetError> {
    if n < 1 || (n < 2 && matches!(case, CosetCase::EvenP2 | CosetCase::EvenP3)) {
        return Err(CosetError::Parameters(format!("rank {n} too small for {}", case.name())));
    }
    let m = case.ambient(n);
    match case {
        CosetCase::EvenP3 => find_survivors_refined(m, &case.shape(n), &CosetCase::EvenP2.shape(n), ell, mode),
        _ => find_survivors(m, &case.shape(n), ell, mode),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Witness {
    W0Prime,
    W1,
}

/// The explicit permutations `w₀′` and `w₁` of `{1..4n+1}`.
pub fn explicit_survivor(n: usize, which: Witness) -> Result<CenteredPermutation, CosetError> {
    if n < 2 {
        return Err(CosetError::Parameters(format!("explicit survivors need n >= 2, got {n}")));
    }
    let m = 4 * n + 1;
    let values = (1..=m)
        .map(|i| match i {
            _ if i < n => 4 * n + 2 - 2 * i,
            _ if i == n => match which {
                Witness::W0Prime => 2 * n - 1,
                Witness::W1 => 2 * n + 3,
            },
            _ if i < 2 * n => 2 * i - 2 * n - 1,
            _ if i <= 2 * n + 2 => i,
            _ if i <= 3 * n + 1 => 2 * i - 2 * n - 1,
            _ if i == 3 * n + 2 => match which {
                Witness::W0Prime => 2 * n + 3,
                Witness::W1 => 2 * n - 1,
            },
            _ => 8 * n + 4 - 2 * i,
        })
        .collect();
    CenteredPermutation::new(values)
}

/// The survivor `w₀` for `P_1` at depth `n`: `w(i) = 4n−2i+2` for `i ≤ n`.
pub fn p1_survivor_prefix(n: usize) -> Vec<usize> {
    (1..=n).map(|i| 4 * n - 2 * i + 2).collect()
}

/// The odd-case descent-depth prefix: `w(i) = 4n−2i+1` for `i < n`.
pub fn odd_descent_prefix(n: usize) -> Vec<usize> {
    (1..n).map(|i| 4 * n - 2 * i + 1).collect()
}

/// The shortest element of `W_L·w·W_M`, by breadth-first search over the
/// double coset.
pub fn shortest_in_double_coset(w: &CenteredPermutation, left: &LeviShape, right: &LeviShape) -> CenteredPermutation {
    let lg = left.generators();
    let rg = right.generators();
    let mut seen = std::collections::HashSet::new();
    let mut queue = vec![w.clone()];
    seen.insert(w.clone());
    let mut best = w.clone();
    while let Some(x) = queue.pop() {
        if (x.length(), &x.values) < (best.length(), &best.values) {
            best = x.clone();
        }
        for g in &lg {
            let y = g.compose(&x);
            if seen.insert(y.clone()) {
                queue.push(y);
            }
        }
        for g in &rg {
            let y = x.compose(g);
            if seen.insert(y.clone()) {
                queue.push(y);
            }
        }
    }
    best
}

/// Every element of `W(SO_m)` as a centered permutation (determinant one for
/// even `m`).
pub fn all_centered(m: usize) -> Vec<CenteredPermutation> {
    let n = m / 2;
    let mut out = Vec::new();
    for p in crate::weyl::permutations(n) {
        for mask in 0..1u32 << n {
            let mut values: Vec<usize> = (1..=m).collect();
            for i in 1..=n {
                let t = p[i - 1];
                let img = if mask >> (i - 1) & 1 == 1 { m + 1 - t } else { t };
                values[i - 1] = img;
                values[m - i] = m + 1 - img;
            }
            let w = CenteredPermutation { values };
            if m % 2 == 1 || w.sign() == 1 {
                out.push(w);
            }
        }
    }
    out
}

/// Brute-force double cosets: union-find over the whole group under left
/// multiplication by `W_L` and right multiplication by `W_M`. Returns the
/// shortest element of every orbit, sorted.
pub fn brute_force_double_cosets(m: usize, left: &LeviShape, right: &LeviShape) -> Vec<CenteredPermutation> {
    let all = all_centered(m);
    let index: HashMap<&CenteredPermutation, usize> = all.iter().enumerate().map(|(i, w)| (w, i)).collect();
    let mut parent: Vec<usize> = (0..all.len()).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    let lg = left.generators();
    let rg = right.generators();
    for (i, w) in all.iter().enumerate() {
        for y in lg.iter().map(|g| g.compose(w)).chain(rg.iter().map(|g| w.compose(g))) {
            let j = index[&y];
            let (a, b) = (find(&mut parent, i), find(&mut parent, j));
            if a != b {
                parent[a] = b;
            }
        }
    }
    let mut best: HashMap<usize, usize> = HashMap::new();
    for i in 0..all.len() {
        let r = find(&mut parent, i);
        let e = best.entry(r).or_insert(i);
        if all[i].length() < all[*e].length() {
            *e = i;
        }
    }
    let mut out: Vec<CenteredPermutation> = best.into_values().map(|i| all[i].clone()).collect();
    out.sort();
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn explicit_witnesses() {
        assert_eq!(explicit_survivor(2, Witness::W0Prime).unwrap().values(), &[8, 3, 1, 4, 5, 6, 9, 7, 2]);
        assert_eq!(explicit_survivor(2, Witness::W1).unwrap().values(), &[8, 7, 1, 4, 5, 6, 9, 3, 2]);
        for n in 2..=5 {
            explicit_survivor(n, Witness::W0Prime).unwrap();
            explicit_survivor(n, Witness::W1).unwrap();
        }
    }

    #[test]
    fn generators_are_centered() {
        for case in [CosetCase::Odd, CosetCase::EvenP1, CosetCase::EvenP2, CosetCase::EvenP3] {
            for g in case.shape(3).generators() {
                CenteredPermutation::new(g.values().to_vec()).unwrap();
                assert_eq!(g.length(), 1, "{case:?} {g}");
            }
        }
    }

    #[test]
    fn matches_brute_force_small() {
        for n in [2] {
            for case in [CosetCase::Odd, CosetCase::EvenP1, CosetCase::EvenP2, CosetCase::EvenP3] {
                let m = case.ambient(n);
                for ell in 1..=(m - 1) / 2 {
                    let shape = case.shape(n);
                    let fast = enumerate_minimal_reps(m, &shape, ell).unwrap();
                    let slow = brute_force_double_cosets(m, &shape, &LeviShape::q_ell(m, ell));
                    assert_eq!(fast, slow, "{case:?} ell={ell}");
                }
            }
        }
    }

    #[test]
    fn printed_survivor_claims() {
        for n in [2, 3] {
            let m = 4 * n + 1;
            for case in [CosetCase::EvenP1, CosetCase::EvenP2] {
                for ell in n + 1..2 * n {
                    for mode in [I0Mode::General, I0Mode::WithCentre] {
                        assert!(case_survivors(n, case, ell, mode).unwrap().is_empty());
                    }
                }
            }
            let p1 = case_survivors(n, CosetCase::EvenP1, n, I0Mode::WithCentre).unwrap();
            assert_eq!(p1.len(), 1);
            assert_eq!(&p1[0].values()[..n], &p1_survivor_prefix(n)[..]);
            assert!(case_survivors(n, CosetCase::EvenP1, n, I0Mode::General).unwrap().is_empty());
            let w1 = explicit_survivor(n, Witness::W1).unwrap();
            assert_eq!(case_survivors(n, CosetCase::EvenP2, n, I0Mode::General).unwrap(), vec![w1]);
            let w0p = explicit_survivor(n, Witness::W0Prime).unwrap();
            assert!(enumerate_minimal_reps(m, &CosetCase::EvenP3.shape(n), n).unwrap().contains(&w0p));
            assert!(!survives_general_position(&w0p, n, I0Mode::WithCentre));
            assert_eq!(case_survivors(n, CosetCase::EvenP3, n, I0Mode::General).unwrap(), vec![w0p]);
        }
    }

    #[test]
    fn odd_case_claims() {
        for n in [2, 3] {
            for ell in n..2 * n {
                assert!(case_survivors(n, CosetCase::Odd, ell, I0Mode::General).unwrap().is_empty());
            }
            let s = case_survivors(n, CosetCase::Odd, n - 1, I0Mode::General).unwrap();
            assert_eq!(s.len(), 1);
            assert_eq!(&s[0].values()[..n - 1], &odd_descent_prefix(n)[..]);
            let prefixed: Vec<_> = enumerate_minimal_reps(4 * n, &CosetCase::Odd.shape(n), n - 1)
                .unwrap()
                .into_iter()
                .filter(|w| w.values()[..n - 1] == odd_descent_prefix(n)[..])
                .collect();
            assert_eq!(prefixed, s);
        }
    }

    #[test]
    fn trivial_examples() {
        let id = CenteredPermutation::identity(9);
        assert!(!survives_general_position(&id, 2, I0Mode::WithCentre));
        assert!(CenteredPermutation::new(vec![2, 1, 3]).is_err());
        assert!(enumerate_minimal_reps(9, &CosetCase::EvenP1.shape(2), 5).is_err());
        assert!(enumerate_minimal_reps(8, &CosetCase::EvenP1.shape(2), 2).is_err());
    }
}
