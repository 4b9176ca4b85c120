//! Formula families that separate the filters of the Łukasiewicz logic.
//!
//! `F_n` is the disjunction of all biconditionals `p_i <-> p_j` with
//! `1 <= i < j <= n+1`, folded to the left in lexicographic pair order. Its
//! value never drops below `((n-1)/n, 1/n)`.

use super::derived::{equiv, fuse};
use super::Formula;

fn atom(i: usize) -> Formula {
    Formula::atom(&format!("p{i}"))
}

// F_n over atoms p_{first} .. p_{first+n}.
fn family_from(n: usize, first: usize) -> Formula {
    assert!(n >= 1, "F_n needs n >= 1");
    let mut disjuncts = Vec::new();
    for i in first..=first + n {
        for j in i + 1..=first + n {
            disjuncts.push(equiv(atom(i), atom(j)));
        }
    }
    let mut it = disjuncts.into_iter();
    let first = it.next().expect("at least one pair");
    it.fold(first, Formula::or)
}

/// `F_n` over atoms `p1 .. p{n+1}`.
pub fn family_fn(n: usize) -> Formula {
    family_from(n, 1)
}

/// `F_left * F_right`; with `shared` both factors use `p1 ..`, otherwise the
/// right factor starts after the left one's atoms.
pub fn fusion_family(left_n: usize, right_n: usize, shared: bool) -> Formula {
    let right_first = if shared { 1 } else { left_n + 2 };
    fuse(family_from(left_n, 1), family_from(right_n, right_first))
}

/// `F_2 * F_n` with disjoint atoms: `p1..p3` on the left, `p4..p{n+4}` on the right.
pub fn family_f2_odot_fn(n: usize) -> Formula {
    assert!(n >= 3, "F_2 * F_n needs n >= 3");
    fusion_family(2, n, false)
}

/// `F_k * F_k` over the same atoms.
pub fn family_fk_odot_fk(k: usize) -> Formula {
    fusion_family(k, k, true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::{parse, LogicId};

    fn disjuncts(f: &Formula) -> usize {
        match f {
            Formula::Or(a, b) => disjuncts(a) + disjuncts(b),
            _ => 1,
        }
    }

    #[test]
    fn small_instances() {
        let l = LogicId::LUK_ARROW;
        assert_eq!(family_fn(1), parse("p1 <-> p2", l).unwrap());
        assert_eq!(
            family_fn(2),
            parse("(p1 <-> p2) | (p1 <-> p3) | (p2 <-> p3)", l).unwrap()
        );
    }

    #[test]
    fn atom_and_disjunct_counts() {
        for n in 1..=5 {
            let f = family_fn(n);
            assert_eq!(f.atoms().len(), n + 1);
            assert_eq!(disjuncts(&f), (n + 1) * n / 2);
        }
    }

    #[test]
    fn fusion_variants() {
        let disjoint = family_f2_odot_fn(3);
        let names: Vec<_> = disjoint.atoms().into_iter().collect();
        assert_eq!(names.len(), 7);
        assert!(names.contains(&"p7".to_string()));
        let shared = family_fk_odot_fk(3);
        assert_eq!(shared.atoms().len(), 4);
        assert_eq!(
            shared,
            parse(&format!("({}) * ({})", family_fn(3), family_fn(3)), LogicId::LUK_ARROW)
                .unwrap()
        );
    }
}
