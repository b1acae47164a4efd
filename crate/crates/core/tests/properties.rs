use std::sync::OnceLock;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;
use proptest::prelude::*;

use dodeca_core::cosets::{low_index_classes, PermutationAction, SubgroupRecord};
use dodeca_core::cubecomplex::{cubulate, CubeComplex};
use dodeca_core::dodecomplex::{appendix::six_cover, base_complex, DodecahedralComplex};
use dodeca_core::fpgroup::{builtin_presentation, Letter, Space, Word, LETTER_COUNT};
use dodeca_core::homology::{cover_homology, smith_normal_form, AbelianGroup, IntegerMatrix, PrimePower};
use dodeca_core::hypersurface::{disk_surfaces, specialness};
use dodeca_core::pipeline::double_cover_actions;

fn small_classes() -> &'static [SubgroupRecord] {
    static C: OnceLock<Vec<SubgroupRecord>> = OnceLock::new();
    C.get_or_init(|| low_index_classes(&builtin_presentation(Space::Ws), 6).unwrap())
}

fn c_doubles() -> &'static [PermutationAction] {
    static D: OnceLock<Vec<PermutationAction>> = OnceLock::new();
    D.get_or_init(|| double_cover_actions(Space::Ws, &six_cover().action).unwrap())
}

/// The same cover with its sheets renamed by `pi`.
fn relabel(a: &PermutationAction, pi: &[usize]) -> PermutationAction {
    let perms = a
        .perms()
        .iter()
        .map(|p| {
            let mut q = vec![0u32; p.len()];
            for (i, &j) in p.iter().enumerate() {
                q[pi[i]] = pi[j as usize] as u32;
            }
            q
        })
        .collect();
    PermutationAction::new(perms).unwrap()
}

fn matrix() -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1usize..6, 1usize..6).prop_flat_map(|(r, c)| prop::collection::vec(prop::collection::vec(-6i64..7, c), r))
}

fn word() -> impl Strategy<Value = Word> {
    prop::collection::vec(0..LETTER_COUNT, 0..14)
        .prop_map(|ls| Word::from_letters(ls.into_iter().map(Letter::from_index).collect()))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn smith_divisor_chain_and_ranks(rows in matrix()) {
        let m = IntegerMatrix::from_dense(&rows);
        let d = smith_normal_form(&m);
        for w in d.windows(2) {
            prop_assert!(w[1].is_multiple_of(&w[0]));
        }
        prop_assert!(d.iter().all(|x| *x > BigInt::zero()));
        for p in [2u64, 3, 5, 7] {
            let units = d.iter().filter(|x| !x.is_multiple_of(&BigInt::from(p))).count();
            prop_assert_eq!(m.rank_mod(p), units);
        }
    }

    #[test]
    fn smith_ignores_row_and_column_order(rows in matrix(), seed in any::<u64>()) {
        let m = IntegerMatrix::from_dense(&rows);
        let mut rp: Vec<usize> = (0..m.rows()).collect();
        let mut cp: Vec<usize> = (0..m.cols()).collect();
        let shift = seed as usize % rp.len();
        rp.rotate_left(shift);
        cp.reverse();
        prop_assert_eq!(smith_normal_form(&m), smith_normal_form(&m.permuted(&rp, &cp)));
    }

    #[test]
    fn abelian_group_text_round_trip(free in 0usize..5, tors in prop::collection::vec((prop::sample::select(vec![2u64, 3, 5, 7, 11]), 1u32..4), 0..6)) {
        let g = AbelianGroup::new(free, tors.into_iter().map(|(prime, exponent)| PrimePower { prime, exponent }).collect());
        prop_assert_eq!(g.to_string().parse::<AbelianGroup>().unwrap(), g);
    }

    #[test]
    fn word_algebra(w in word(), k in 0usize..8) {
        let r = w.reduce();
        prop_assert_eq!(r.reduce(), r.clone());
        prop_assert_eq!(w.invert().invert(), w.clone());
        prop_assert_eq!(r.rotate(k).cyclic_normal_form(), r.cyclic_normal_form());
        prop_assert_eq!(w.to_string().parse::<Word>().unwrap(), w.clone());
        prop_assert!(w.concat(&w.invert()).reduce().is_empty());
    }

    /// Cover invariants do not depend on how the sheets are numbered, and
    /// satisfy the counting identities.
    #[test]
    fn cover_invariants(idx in 0usize..100, seed in any::<u64>()) {
        let classes = small_classes();
        let a = classes[idx % classes.len()].action();
        let k = a.degree();
        let mut pi: Vec<usize> = (0..k).collect();
        let mut s = seed;
        for i in (1..k).rev() {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            pi.swap(i, (s >> 33) as usize % (i + 1));
        }
        let b = relabel(&a, &pi);
        let p = builtin_presentation(Space::Ws);
        prop_assert_eq!(cover_homology(&p, &a.as_table()), cover_homology(&p, &b.as_table()));
        let x = DodecahedralComplex::cover(Space::Ws, &b);
        let f = x.f_vector();
        prop_assert_eq!(f, base_complex(Space::Ws).f_vector().scaled(k));
        prop_assert_eq!(f.euler_characteristic(), 0);
        let fast = disk_surfaces(&x);
        prop_assert_eq!(fast.disks.iter().map(Vec::len).sum::<usize>(), 12 * k);
        prop_assert_eq!(fast.count(), disk_surfaces(&DodecahedralComplex::cover(Space::Ws, &a)).count());
        let c = cubulate(&x);
        prop_assert_eq!(c.f_vector().cubes, 20 * k);
    }

    /// Doubles of the six-sheeted cover have only embedded components, so
    /// both osculation tests apply and must agree.
    #[test]
    fn osculation_lemmas_agree(i in 0usize..127) {
        let d = &c_doubles()[i];
        let x = DodecahedralComplex::cover(Space::Ws, d);
        prop_assert!(disk_surfaces(&x).all_embedded());
        let r = specialness(&cubulate(&x));
        prop_assert!(r.lemma_agrees);
        prop_assert!(r.all_embedded());
    }
}

#[test]
fn three_torus_is_special() {
    let r = specialness(&CubeComplex::three_torus());
    assert!(r.special);
}
