//! Canonical forms of families under relabelling of the ground set.

use crate::family::SetFamily;
use crate::numeric::next_permutation;

/// Largest ground set for canonical forms (n! relabellings are tried).
pub const MAX_CANON_N: u32 = 8;

/// Lexicographically least sorted mask list over all relabellings. Two
/// families on the same ground set are isomorphic iff their forms agree.
///
/// Panics if `n` exceeds [`MAX_CANON_N`].
pub fn canonical_form(family: &SetFamily) -> Vec<u64> {
    let n = family.n();
    assert!(n <= MAX_CANON_N, "canonical form needs n ≤ {MAX_CANON_N}");
    let mut perm: Vec<u32> = (0..n).collect();
    let mut best: Vec<u64> = family.iter().map(|m| m.bits()).collect();
    let mut image = Vec::with_capacity(family.len());
    loop {
        image.clear();
        image.extend(family.iter().map(|m| m.permute(&perm).bits()));
        image.sort_unstable();
        if image < best {
            std::mem::swap(&mut image, &mut best);
        }
        if !next_permutation(&mut perm) {
            return best;
        }
    }
}

pub fn are_isomorphic(a: &SetFamily, b: &SetFamily) -> bool {
    a.n() == b.n() && a.len() == b.len() && canonical_form(a) == canonical_form(b)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fam(n: u32, sets: &[&[u32]]) -> SetFamily {
        SetFamily::from_sets(n, sets).unwrap()
    }

    #[test]
    fn relabelled_families_agree() {
        let a = fam(4, &[&[1], &[1, 2], &[3, 4]]);
        let b = a.relabel(&[2, 0, 3, 1]).unwrap();
        assert_ne!(a, b);
        assert!(are_isomorphic(&a, &b));
        assert!(!are_isomorphic(&a, &fam(4, &[&[1], &[2], &[3, 4]])));
    }

    #[test]
    fn form_is_a_member_list() {
        let f = fam(3, &[&[3], &[2, 3]]);
        // {1} < {1,2} after sending 3 to 1 and 2 to 2.
        assert_eq!(canonical_form(&f), vec![0b001, 0b011]);
    }
}
