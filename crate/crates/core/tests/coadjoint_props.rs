use std::sync::LazyLock;

use adapted_core::biparabolic::simple_lie_algebra;
use adapted_core::catalog::{self, CATALOG_NAMES};
use adapted_core::linalg::int;
use adapted_core::{DualVector, LieAlgebra, RootSystem, Scalar};
use num_traits::Zero;
use proptest::prelude::*;

static ALGEBRAS: LazyLock<Vec<LieAlgebra>> = LazyLock::new(build);

fn algebras() -> &'static [LieAlgebra] {
    &ALGEBRAS
}

fn build() -> Vec<LieAlgebra> {
    let mut v: Vec<LieAlgebra> = CATALOG_NAMES.iter().map(|n| catalog::lookup(n).unwrap().algebra).collect();
    v.push(simple_lie_algebra(&RootSystem::new('A', 2).unwrap()).unwrap());
    v.push(simple_lie_algebra(&RootSystem::new('B', 2).unwrap()).unwrap());
    v
}

fn vector(n: usize) -> impl Strategy<Value = Vec<Scalar>> {
    prop::collection::vec(-4i64..=4, n).prop_map(|v| v.into_iter().map(int).collect())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn form_rank_even_and_bounded(seed in 0usize..1000, raw in vector(12)) {
        let all = algebras();
        let a = &all[seed % all.len()];
        let xi = DualVector::new(raw[..a.dim()].to_vec());
        let form = a.coadjoint_form(&xi);
        prop_assert!(form.matrix.is_skew());
        let r = form.rank();
        prop_assert_eq!(r % 2, 0);
        prop_assert!(r <= a.generic_rank());
        prop_assert_eq!(a.stabilizer(&xi).len() + r, a.dim());
    }

    #[test]
    fn coadjoint_is_a_representation(seed in 0usize..1000, x in vector(12), y in vector(12), raw in vector(12)) {
        let all = algebras();
        let a = &all[seed % all.len()];
        let n = a.dim();
        let (x, y) = (&x[..n], &y[..n]);
        let xi = DualVector::new(raw[..n].to_vec());
        let xy = a.coadjoint_action(x, &a.coadjoint_action(y, &xi));
        let yx = a.coadjoint_action(y, &a.coadjoint_action(x, &xi));
        let br = a.coadjoint_action(&a.bracket(x, y), &xi);
        for k in 0..n {
            prop_assert_eq!(&xy.coords[k] - &yx.coords[k], br.coords[k].clone());
        }
    }

    #[test]
    fn stabilizer_annihilates(seed in 0usize..1000, raw in vector(12)) {
        let all = algebras();
        let a = &all[seed % all.len()];
        let xi = DualVector::new(raw[..a.dim()].to_vec());
        for s in a.stabilizer(&xi) {
            prop_assert!(a.coadjoint_action(&s, &xi).coords.iter().all(Zero::is_zero));
        }
    }
}

#[test]
fn sampled_ranks_never_exceed_generic() {
    for a in algebras() {
        assert_eq!(a.generic_rank(), a.generic_rank_symbolic(), "{}", a.name());
        for r in a.sampled_ranks(3, 6) {
            assert!(r <= a.generic_rank());
        }
    }
}
