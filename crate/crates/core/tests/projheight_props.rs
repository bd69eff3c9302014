use heightlab::arith::int;
use heightlab::projheight::{
    apply_rational_map, count_points_of_bounded_height, is_kronecker_unit, normalize, power_point, segre, veronese,
    RationalMapQ, DEFAULT_ENUMERATION_BUDGET,
};
use heightlab::{Error, Poly, ProjPointQ, Rat};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

fn coords(len: std::ops::RangeInclusive<usize>, max: i64) -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(-max..=max, len).prop_filter("not all zero", |v| v.iter().any(|&x| x != 0))
}

fn rational() -> impl Strategy<Value = Rat> {
    (-40i64..=40, 1i64..=40).prop_map(|(n, d)| Rat::new(n.into(), d.into()))
}

fn nonzero_rational() -> impl Strategy<Value = Rat> {
    rational().prop_filter("nonzero", |r| !r.is_zero())
}

fn point(v: &[i64]) -> ProjPointQ {
    ProjPointQ::from_i64(v).unwrap()
}

proptest! {
    #[test]
    fn normalize_ignores_scaling(v in prop::collection::vec(rational(), 2..=5), l in nonzero_rational()) {
        prop_assume!(v.iter().any(|x| !x.is_zero()));
        let p = normalize(&v).unwrap();
        let scaled: Vec<Rat> = v.iter().map(|x| x * &l).collect();
        prop_assert_eq!(&normalize(&scaled).unwrap(), &p);
        prop_assert_eq!(normalize(&p.to_rationals()).unwrap(), p);
    }

    #[test]
    fn segre_is_multiplicative(a in coords(2..=4, 60), b in coords(2..=4, 60)) {
        let (p, q) = (point(&a), point(&b));
        prop_assert_eq!(segre(&p, &q).height(), p.height() * q.height());
    }

    #[test]
    fn veronese_raises_to_the_degree(a in coords(2..=3, 30), d in 1u32..=6) {
        let p = point(&a);
        prop_assert_eq!(veronese(&p, d).unwrap().height(), p.height().pow(d));
    }

    #[test]
    fn powers_raise_the_height(a in coords(2..=5, 30), m in 1u32..=6) {
        let p = point(&a);
        prop_assert_eq!(power_point(&p, m).unwrap().height(), p.height().pow(m));
    }

    #[test]
    fn kronecker_units_are_height_one(a in coords(2..=6, 2)) {
        let p = point(&a);
        let small = p.coords().iter().all(|x| x.abs() <= BigInt::one());
        prop_assert_eq!(is_kronecker_unit(&p), p.height().is_one());
        prop_assert_eq!(is_kronecker_unit(&p), small);
    }

    #[test]
    fn rational_maps_obey_the_height_bound(
        terms in prop::collection::vec(prop::collection::vec((0u32..=2, -9i64..=9), 1..=4), 2..=3),
        a in coords(3..=3, 25),
    ) {
        // degree-2 maps P^2 -> P^k from random coefficient lists over the 6 quadratic monomials
        let monos: [[u32; 3]; 6] = [[2, 0, 0], [1, 1, 0], [1, 0, 1], [0, 2, 0], [0, 1, 1], [0, 0, 2]];
        let comps: Vec<Poly> = terms
            .iter()
            .map(|t| {
                let mut f = Poly::zero_in(3);
                for (k, (i, c)) in t.iter().enumerate() {
                    f.add_term(monos[(*i as usize + 2 * k) % 6].to_vec(), int(*c));
                }
                f
            })
            .collect();
        prop_assume!(comps.iter().any(|f| !f.is_zero()));
        let phi = RationalMapQ::new(2, comps).unwrap();
        let p = point(&a);
        match apply_rational_map(&phi, &p) {
            Err(Error::CommonZero) => {}
            Err(e) => prop_assert!(false, "{e}"),
            Ok(image) => {
                let rhs = BigInt::from(phi.monomial_bound()) * phi.height() * p.height().pow(2);
                prop_assert!(image.height() <= rhs);
            }
        }
    }
}

#[test]
fn northcott_counts_are_monotone() {
    for n in 1..=3 {
        let mut last = 0;
        for c in 1..=6 {
            let k = count_points_of_bounded_height(n, c, DEFAULT_ENUMERATION_BUDGET).unwrap();
            assert!(k >= last);
            last = k;
        }
    }
    assert!(count_points_of_bounded_height(6, 100, 1000).is_err());
}
