use std::sync::Arc;

use char2q::fields::{FieldDescriptor, FieldElement};
use char2q::quadspace::Vector;
use char2q::quaternion::{Kind, Presentation, QuaternionElement};
use char2q::symbols::symbol_invariant;
use proptest::prelude::*;

fn gf8() -> FieldDescriptor {
    FieldDescriptor::finite(3).unwrap()
}

fn f2t() -> FieldDescriptor {
    FieldDescriptor::laurent(1, 32).unwrap()
}

fn f4t() -> FieldDescriptor {
    FieldDescriptor::laurent(2, 32).unwrap()
}

fn finite(desc: FieldDescriptor) -> impl Strategy<Value = FieldElement> {
    (0..desc.coefficients().size() as u16).prop_map(move |c| desc.constant(c))
}

/// Exact Laurent polynomials with valuation in `[-3, 2]` and up to five terms.
fn polynomial(desc: FieldDescriptor) -> impl Strategy<Value = FieldElement> {
    let q = desc.coefficients().size() as u16;
    (-3i64..=2, prop::collection::vec(0..q, 0..=5)).prop_map(move |(v, c)| desc.polynomial(v, &c))
}

fn nonzero(s: impl Strategy<Value = FieldElement>) -> impl Strategy<Value = FieldElement> {
    s.prop_filter("nonzero", |x| !x.is_zero())
}

fn element(desc: FieldDescriptor) -> BoxedStrategy<FieldElement> {
    if desc.is_finite() {
        finite(desc).boxed()
    } else {
        polynomial(desc).boxed()
    }
}

fn quaternion(p: Arc<Presentation>) -> impl Strategy<Value = QuaternionElement> {
    let desc = p.descriptor();
    prop::array::uniform4(element(desc)).prop_map(move |c| p.element(c).unwrap())
}

fn presentation(desc: FieldDescriptor, kind: Kind) -> impl Strategy<Value = Arc<Presentation>> {
    (element(desc), nonzero(element(desc))).prop_filter_map("valid presentation", move |(a, b)| {
        Presentation::new(kind, a, b).ok()
    })
}

fn algebra_with_elements(
    desc: FieldDescriptor,
    kind: Kind,
) -> impl Strategy<Value = (QuaternionElement, QuaternionElement, QuaternionElement)> {
    presentation(desc, kind).prop_flat_map(|p| {
        (
            quaternion(Arc::clone(&p)),
            quaternion(Arc::clone(&p)),
            quaternion(p),
        )
    })
}

fn field_axioms(a: &FieldElement, b: &FieldElement, c: &FieldElement) {
    assert_eq!(a + b, b + a);
    assert_eq!(a * b, b * a);
    assert_eq!(&(a + b) + c, a + &(b + c));
    assert_eq!(&(a * b) * c, a * &(b * c));
    assert_eq!(a * &(b + c), &(a * b) + &(a * c));
    assert!((a + a).is_zero());
    assert_eq!((a + b).square(), &a.square() + &b.square());
    assert_eq!(a.square().sqrt().unwrap(), *a);
    assert_eq!((a + b).wp(), &a.wp() + &b.wp());
    if !a.is_zero() {
        assert_eq!(a * &a.inv().unwrap(), a.descriptor().one());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn finite_field_axioms(a in finite(gf8()), b in finite(gf8()), c in finite(gf8())) {
        field_axioms(&a, &b, &c);
    }

    #[test]
    fn laurent_field_axioms(a in polynomial(f4t()), b in polynomial(f4t()), c in polynomial(f4t())) {
        field_axioms(&a, &b, &c);
    }

    #[test]
    fn print_parse_round_trip(a in polynomial(f4t()), n in 0u64..4) {
        let x = if n == 0 { a } else { a.pow(n) };
        let d = f4t();
        prop_assert_eq!(d.parse(&x.to_string()).unwrap(), x.clone());
        prop_assert_eq!(d.parse(&x.to_string()).unwrap().to_string(), x.to_string());
    }

    #[test]
    fn polar_form_is_alternating_and_symmetric(
        (x, y, _) in algebra_with_elements(f2t(), Kind::As),
    ) {
        let p = Arc::clone(x.presentation());
        let nf = p.norm_form();
        let (u, v) = (nf.to_form_coords(&x), nf.to_form_coords(&y));
        let q = &nf.form;
        prop_assert_eq!(q.polar(&u, &v).unwrap(), q.polar(&v, &u).unwrap());
        prop_assert!(q.polar(&u, &u).unwrap().is_zero());
        let sum = Vector(u.coords().iter().zip(v.coords()).map(|(a, b)| a + b).collect());
        let expected = &(&q.evaluate(&u).unwrap() + &q.evaluate(&v).unwrap()) + &q.polar(&u, &v).unwrap();
        prop_assert_eq!(q.evaluate(&sum).unwrap(), expected);
        prop_assert_eq!(q.evaluate(&u).unwrap(), x.norm());
    }

    #[test]
    fn transvection_preserves_the_form(
        (x, y, z) in algebra_with_elements(f2t(), Kind::Bil),
    ) {
        let nf = x.presentation().norm_form();
        let q = &nf.form;
        let (u, v, w) = (nf.to_form_coords(&x), nf.to_form_coords(&y), nf.to_form_coords(&z));
        prop_assume!(!q.evaluate(&u).unwrap().is_zero());
        let (tv, tw) = (q.transvection(&u, &v).unwrap(), q.transvection(&u, &w).unwrap());
        prop_assert_eq!(q.evaluate(&tv).unwrap(), q.evaluate(&v).unwrap());
        prop_assert_eq!(q.polar(&tv, &tw).unwrap(), q.polar(&v, &w).unwrap());
        prop_assert_eq!(q.transvection(&u, &tv).unwrap(), v);
    }

    #[test]
    fn finite_quaternion_identities(
        (x, y, z) in prop_oneof![Just(Kind::As), Just(Kind::Bil)].prop_flat_map(|k| algebra_with_elements(gf8(), k)),
    ) {
        quaternion_laws(&x, &y, &z);
    }

    #[test]
    fn laurent_quaternion_identities(
        (x, y, z) in prop_oneof![Just(Kind::As), Just(Kind::Bil)].prop_flat_map(|k| algebra_with_elements(f2t(), k)),
    ) {
        quaternion_laws(&x, &y, &z);
    }
}

fn quaternion_laws(x: &QuaternionElement, y: &QuaternionElement, z: &QuaternionElement) {
    let p = x.presentation();
    let xy = x.try_mul(y).unwrap();
    assert_eq!(xy.norm(), &x.norm() * &y.norm(), "norm is multiplicative");
    assert_eq!(
        xy.try_mul(z).unwrap(),
        x.try_mul(&y.try_mul(z).unwrap()).unwrap(),
        "associativity"
    );
    let lhs = x.square();
    let rhs = x.scale(&x.trace()).try_add(&p.scalar(x.norm())).unwrap();
    assert_eq!(lhs, rhs, "x^2 = T(x) x + N(x)");
    assert_eq!(x.try_mul(&x.conjugate()).unwrap(), p.scalar(x.norm()));
    assert_eq!(x.conjugate().conjugate(), *x);
    assert_eq!(
        xy.conjugate(),
        y.conjugate().try_mul(&x.conjugate()).unwrap()
    );
    let sum = x.try_add(y).unwrap();
    let polar = &(&sum.norm() + &x.norm()) + &y.norm();
    assert_eq!(x.try_polar(y).unwrap(), polar);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn as_symbol_is_additive_in_a(a1 in polynomial(f2t()), a2 in polynomial(f2t()), b in nonzero(polynomial(f2t()))) {
        let s = |a: &FieldElement| symbol_invariant(Kind::As, a, &b).unwrap();
        prop_assert_eq!(s(&(&a1 + &a2)), s(&a1) ^ s(&a2));
    }

    #[test]
    fn as_symbol_is_multiplicative_in_b(
        a in polynomial(f2t()),
        b1 in nonzero(polynomial(f2t())),
        b2 in nonzero(polynomial(f2t())),
    ) {
        let s = |b: &FieldElement| symbol_invariant(Kind::As, &a, b).unwrap();
        prop_assert_eq!(s(&(&b1 * &b2)), s(&b1) ^ s(&b2));
    }

    #[test]
    fn as_symbol_ignores_wp_images(a in polynomial(f2t()), c in polynomial(f2t()), b in nonzero(polynomial(f2t()))) {
        let shifted = &a + &c.wp();
        prop_assert_eq!(
            symbol_invariant(Kind::As, &shifted, &b).unwrap(),
            symbol_invariant(Kind::As, &a, &b).unwrap()
        );
    }

    #[test]
    fn as_symbol_of_a_norm_is_split(a in polynomial(f2t()), u in polynomial(f2t()), v in polynomial(f2t())) {
        // u^2 + uv + a v^2 is a norm from the extension defined by a.
        let n = &(&u.square() + &(&u * &v)) + &(&a * &v.square());
        prop_assume!(!n.is_zero());
        prop_assert_eq!(symbol_invariant(Kind::As, &a, &n).unwrap(), 0);
    }

    #[test]
    fn bil_symbol_is_additive(
        a1 in nonzero(polynomial(f2t())),
        a2 in nonzero(polynomial(f2t())),
        b in nonzero(polynomial(f2t())),
    ) {
        let s = |a: &FieldElement, b: &FieldElement| symbol_invariant(Kind::Bil, a, b).unwrap();
        let sum = &a1 + &a2;
        prop_assume!(!sum.is_zero());
        prop_assert_eq!(s(&sum, &b), s(&a1, &b) ^ s(&a2, &b));
        prop_assert_eq!(s(&b, &sum), s(&b, &a1) ^ s(&b, &a2));
        prop_assert_eq!(s(&a1, &b), s(&b, &a1));
    }

    #[test]
    fn bil_symbol_ignores_squares(a in nonzero(polynomial(f2t())), b in nonzero(polynomial(f2t())), c in polynomial(f2t())) {
        let s = |a: &FieldElement, b: &FieldElement| symbol_invariant(Kind::Bil, a, b).unwrap();
        let a2 = &a + &c.square();
        prop_assume!(!a2.is_zero());
        prop_assert_eq!(s(&a2, &b), s(&a, &b));
    }
}
