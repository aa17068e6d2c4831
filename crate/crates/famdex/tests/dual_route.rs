//! Dual-route validation of the induction formula on the elementary abelian
//! objects: the same object computed once through the mask pipeline and once
//! through the permutation-group pipeline must give matching pair sets,
//! induced elements, and supports under the explicit dictionary between
//! masks and permutations.

use famdex::f2::{e, support, symplectic, Mask};
use famdex::gammasets::{big_x, AObject, XPair};
use famdex::groups::{ambient, elements_of, generated_subgroup, set_of, Perm, SubSet};
use famdex::mgamma::{perm_mset_of, rho, rho_perm_with, MIndex, SsVariant};
use std::collections::BTreeSet;

/// Dictionary for the order-4 object at bound 4: odd mask bits map to
/// commuting transpositions.
struct Dict {
    gens: Vec<(u32, usize)>, // (odd index, ambient element index)
    gamma: SubSet,
    d: u32,
}

impl Dict {
    fn bound_four() -> Dict {
        let amb = ambient();
        let g1 = amb.index[&Perm::from_cycles(&[&[1, 2]])];
        let g3 = amb.index[&Perm::from_cycles(&[&[3, 4]])];
        Dict {
            gens: vec![(1, g1), (3, g3)],
            gamma: generated_subgroup(&[g1, g3]),
            d: 4,
        }
    }

    fn bound_two() -> Dict {
        let amb = ambient();
        let g1 = amb.index[&Perm::from_cycles(&[&[1, 2]])];
        Dict {
            gens: vec![(1, g1)],
            gamma: generated_subgroup(&[g1]),
            d: 2,
        }
    }

    /// Odd-part mask to group element.
    fn elem(&self, mask: Mask) -> usize {
        let amb = ambient();
        let mut acc = 0usize; // identity
        for &(bit, g) in &self.gens {
            if mask & e(bit) != 0 {
                acc = amb.mul[acc][g] as usize;
            }
        }
        acc
    }

    /// Odd-part subspace to subgroup.
    fn subgroup(&self, s: &famdex::f2::Subspace) -> SubSet {
        set_of(&s.elements().into_iter().map(|m| self.elem(m)).collect::<Vec<_>>())
    }

    /// Character value of the even-part mask at an odd-part mask, as a sign.
    fn char_value(&self, even_mask: Mask, odd_mask: Mask) -> i64 {
        if symplectic(even_mask, odd_mask) == 1 {
            -1
        } else {
            1
        }
    }
}

/// Translate a full pair-space mask (odd element part plus even character
/// part) into the permutation pipeline's index, by matching the character.
fn translate_index(dict: &Dict, mask: Mask) -> MIndex {
    let odd = mask & famdex::f2::odd_mask(dict.d);
    let even = mask & famdex::f2::even_mask(dict.d);
    let ms = perm_mset_of(dict.gamma);
    let x = dict.elem(odd);
    let class = ms
        .classes
        .iter()
        .position(|c| c.contains(&x))
        .expect("element class");
    // in the abelian case the centralizer is the whole object; find the
    // character row whose values match the pairing signs on every element
    let zg = &ms.cent_groups[class];
    let elems = &ms.cent_elems[class];
    let table = &ms.tables[class];
    let irrep = (0..table.rows.len())
        .find(|&r| {
            elems.iter().enumerate().all(|(local, &g)| {
                // reconstruct the odd mask realizing g
                let gm = (0..(1u64 << dict.d))
                    .map(|m| m & famdex::f2::odd_mask(dict.d))
                    .find(|&m| dict.elem(m) == g)
                    .expect("dictionary covers the subgroup");
                let expected = dict.char_value(even, gm);
                let got = &table.rows[r][zg.class_of[local]];
                got.is_integer_value(expected)
            })
        })
        .expect("character dictionary");
    MIndex::Pair { class, irrep }
}

fn check_object(dict: &Dict, obj: AObject) {
    // pair collections correspond
    let linear_pairs = big_x(&obj);
    for pair in &linear_pairs {
        let XPair::Linear(p) = pair else { unreachable!() };
        let small = dict.subgroup(&p.small);
        let large = dict.subgroup(&p.large);
        // induced element through the permutation pipeline
        let perm_rho = rho_perm_with(SsVariant::Standard, dict.gamma, small, large);
        // induced element through the mask pipeline, translated
        let lin_rho = rho(&obj, pair);
        let translated: BTreeSet<MIndex> = lin_rho
            .support()
            .into_iter()
            .map(|m| match m {
                MIndex::Mask(m) => translate_index(dict, m),
                _ => unreachable!(),
            })
            .collect();
        let perm_support: BTreeSet<MIndex> = perm_rho.support().into_iter().collect();
        assert_eq!(
            translated, perm_support,
            "support mismatch for pair {:?}",
            p
        );
        assert!(perm_rho.coeffs.values().all(|c| c.is_one()));
        assert!(lin_rho.coeffs.values().all(|c| c.is_one()));
    }
}

#[test]
fn order_two_object_agrees_across_pipelines() {
    let dict = Dict::bound_two();
    assert_eq!(elements_of(dict.gamma).len(), 2);
    check_object(&dict, AObject::Vd1(2));
}

#[test]
fn order_four_object_agrees_across_pipelines() {
    let dict = Dict::bound_four();
    assert_eq!(elements_of(dict.gamma).len(), 4);
    check_object(&dict, AObject::Vd1(4));
}

#[test]
fn dictionary_is_faithful() {
    let dict = Dict::bound_four();
    // all four odd masks map to distinct elements
    let mut seen = BTreeSet::new();
    for m in [0u64, e(1), e(3), e(1) ^ e(3)] {
        assert!(seen.insert(dict.elem(m)));
    }
    // the full translation is a bijection onto the pair space
    let mut images = BTreeSet::new();
    for m in 0..(1u64 << 4) {
        let sup: Vec<u32> = support(m);
        let _ = sup;
        assert!(images.insert(translate_index(&dict, m)), "collision at {m}");
    }
    assert_eq!(images.len(), 16);
}
