//! Exhaustive search oracles the suites compare the fast routines against.

use gspin_core::root_datum::Parity;
use gspin_core::unramified::{FormalCharacter, SatakeMultiset, SplitTag};

/// Whether the entries not yet `used` split into pairs summing to `ω`, tried
/// over every perfect matching.
fn perfectly_paired(s: &SatakeMultiset, used: &mut [bool]) -> bool {
    let Some(i) = used.iter().position(|u| !u) else {
        return true;
    };
    used[i] = true;
    for j in i + 1..used.len() {
        if !used[j] && &s.entries[i] + &s.entries[j] == s.omega {
            used[j] = true;
            if perfectly_paired(s, used) {
                used[i] = false;
                used[j] = false;
                return true;
            }
            used[j] = false;
        }
    }
    used[i] = false;
    false
}

/// Which pairing tags some arrangement of the entries realizes: `Split` if
/// all entries pair off, `NonSplit` if two entries are `Ω/2` and
/// `Ω/2 + χ_un` and the rest pair off.
pub fn realizable_tags(s: &SatakeMultiset) -> Vec<SplitTag> {
    let len = s.entries.len();
    let mut out = Vec::new();
    if !len.is_multiple_of(2) {
        return out;
    }
    let mut used = vec![false; len];
    if perfectly_paired(s, &mut used) {
        out.push(SplitTag::Split);
    }
    let h = FormalCharacter::half_omega();
    let ht = h.clone().with_twist(true);
    'outer: for i in 0..len {
        for j in 0..len {
            if i != j && s.entries[i] == h && s.entries[j] == ht {
                used[i] = true;
                used[j] = true;
                let ok = perfectly_paired(s, &mut used);
                used[i] = false;
                used[j] = false;
                if ok {
                    out.push(SplitTag::NonSplit);
                    break 'outer;
                }
            }
        }
    }
    out
}

/// The tag a pairing must carry, or `None` if no pairing exists: the
/// odd case needs a split arrangement and trivial `χ`; the even case needs
/// `χ ∈ {1, χ_un}` and the arrangement matching it.
pub fn expected_tag(s: &SatakeMultiset, case: Parity) -> Option<SplitTag> {
    let tags = realizable_tags(s);
    let chi = s.chi();
    let want = match case {
        Parity::Odd if chi.is_zero() => SplitTag::Split,
        Parity::Odd => return None,
        Parity::Even if !chi.is_twist_only() => return None,
        Parity::Even if chi.twist() => SplitTag::NonSplit,
        Parity::Even => SplitTag::Split,
    };
    tags.contains(&want).then_some(want)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_cases() {
        let w = FormalCharacter::omega();
        let mu = FormalCharacter::gen("mu1");
        let split = SatakeMultiset::new(vec![mu.clone(), &w - &mu], w.clone());
        assert_eq!(expected_tag(&split, Parity::Odd), Some(SplitTag::Split));
        let h = FormalCharacter::half_omega();
        let ns = SatakeMultiset::new(vec![h.clone().with_twist(true), h.clone()], w.clone());
        assert_eq!(realizable_tags(&ns), vec![SplitTag::NonSplit]);
        assert_eq!(expected_tag(&ns, Parity::Even), Some(SplitTag::NonSplit));
        assert_eq!(expected_tag(&ns, Parity::Odd), None);
        let bad = SatakeMultiset::new(vec![mu.clone(), mu], w);
        assert!(realizable_tags(&bad).is_empty());
    }
}
