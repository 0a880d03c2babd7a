//! Seeded property suites behind `char2q selftest`.
//!
//! Every suite draws from its own ChaCha stream so adding a suite does not
//! shift the samples of the others. Transcripts carry no timings.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::fields::{random_element, FieldDescriptor, FieldElement, Window};
use crate::oracle::{cross_validate_invariant, Grid};
use crate::quaternion::{Kind, Presentation, QuaternionElement, SampleOptions};
use crate::slots::{common_slot, sample_instance, Theorem};
use crate::symbols::symbol_invariant;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuiteResult {
    pub suite: String,
    pub field: String,
    pub cases: usize,
    pub failures: usize,
    /// Description of the first failing case.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub first_failure: Option<String>,
}

impl SuiteResult {
    fn new(suite: &str, desc: FieldDescriptor) -> Self {
        SuiteResult {
            suite: suite.to_string(),
            field: desc.to_string(),
            cases: 0,
            failures: 0,
            first_failure: None,
        }
    }

    fn record(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.failures += 1;
            if self.first_failure.is_none() {
                self.first_failure = Some(describe());
            }
        }
    }

    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Transcript {
    pub seed: u64,
    pub suites: Vec<SuiteResult>,
}

impl Transcript {
    pub fn cases(&self) -> usize {
        self.suites.iter().map(|s| s.cases).sum()
    }

    pub fn failures(&self) -> usize {
        self.suites.iter().map(|s| s.failures).sum()
    }

    pub fn passed(&self) -> bool {
        self.suites.iter().all(SuiteResult::passed)
    }
}

/// Sample counts per suite.
#[derive(Clone, Copy, Debug)]
pub struct Budget {
    pub field: usize,
    pub algebra: usize,
    pub symbols: usize,
    pub slots: usize,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            field: 200,
            algebra: 200,
            symbols: 100,
            slots: 10,
        }
    }
}

fn descriptors(list: &[&str]) -> Vec<FieldDescriptor> {
    list.iter()
        .map(|s| s.parse().expect("built-in descriptor"))
        .collect()
}

/// Run every suite. With `field`, all suites run over that field only.
pub fn run_all(seed: u64, field: Option<FieldDescriptor>, budget: Budget) -> Transcript {
    let arith = field.map_or_else(
        || descriptors(&["gf(8)", "laurent(gf(2),prec=32)"]),
        |d| vec![d],
    );
    let laurent: Vec<_> = match field {
        Some(d) if d.is_finite() => Vec::new(),
        Some(d) => vec![d],
        None => descriptors(&["laurent(gf(2),prec=32)"]),
    };
    let slot_fields = field.map_or_else(
        || descriptors(&["gf(4)", "laurent(gf(2),prec=16)", "laurent(gf(4),prec=16)"]),
        |d| vec![d],
    );
    let grids = field.map_or_else(
        || descriptors(&["gf(4)", "gf(8)", "laurent(gf(2),prec=16)"]),
        |d| vec![d],
    );

    let mut stream = 0u64;
    let mut next_rng = || {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(stream);
        stream += 1;
        rng
    };
    let mut suites = Vec::new();
    for &d in &arith {
        suites.push(field_axioms(d, budget.field, &mut next_rng()));
        for kind in [Kind::As, Kind::Bil] {
            suites.push(algebra_identities(d, kind, budget.algebra, &mut next_rng()));
        }
    }
    for &d in &laurent {
        suites.push(symbol_relations(d, budget.symbols, &mut next_rng()));
    }
    for &d in &slot_fields {
        for theorem in Theorem::ALL {
            suites.push(common_slots(d, theorem, budget.slots, &mut next_rng()));
        }
    }
    for &d in &grids {
        suites.push(cross_validation(d));
    }
    Transcript { seed, suites }
}

fn nonzero<R: Rng + ?Sized>(desc: FieldDescriptor, rng: &mut R) -> FieldElement {
    loop {
        let x = random_element(desc, rng);
        if !x.is_zero() {
            return x;
        }
    }
}

/// Associativity, distributivity, inverses, Frobenius and additivity of ℘.
pub fn field_axioms<R: Rng + ?Sized>(desc: FieldDescriptor, n: usize, rng: &mut R) -> SuiteResult {
    let mut out = SuiteResult::new("field_axioms", desc);
    for _ in 0..n {
        let x = random_element(desc, rng);
        let y = random_element(desc, rng);
        let z = nonzero(desc, rng);
        let describe = || format!("x = {x}, y = {y}, z = {z}");
        let assoc = &(&x * &y) * &z == &x * &(&y * &z);
        let distrib = &x * &(&y + &z) == &(&x * &y) + &(&x * &z);
        let inverse = z.inv().map(|zi| (&zi * &z).is_one()).unwrap_or(false);
        let frobenius = (&x + &y).square() == &x.square() + &y.square();
        let wp = (&x + &y).wp() == &x.wp() + &y.wp();
        out.record(assoc && distrib && inverse && frobenius && wp, describe);
    }
    out
}

fn random_presentation<R: Rng + ?Sized>(
    desc: FieldDescriptor,
    kind: Kind,
    rng: &mut R,
) -> Arc<Presentation> {
    let a = random_element(desc, rng);
    let b = nonzero(desc, rng);
    Presentation::new(kind, a, b).expect("b is nonzero")
}

fn random_quaternion<R: Rng + ?Sized>(p: &Arc<Presentation>, rng: &mut R) -> QuaternionElement {
    let d = p.descriptor();
    p.element(std::array::from_fn(|_| random_element(d, rng)))
        .expect("coordinates share the descriptor")
}

/// Cayley–Hamilton, multiplicativity of the norm, the linearized product
/// identity and the two product-pairing identities.
pub fn algebra_identities<R: Rng + ?Sized>(
    desc: FieldDescriptor,
    kind: Kind,
    n: usize,
    rng: &mut R,
) -> SuiteResult {
    let mut out = SuiteResult::new(&format!("algebra_identities_{kind}"), desc);
    for _ in 0..n {
        let p = random_presentation(desc, kind, rng);
        let x = random_quaternion(&p, rng);
        let y = random_quaternion(&p, rng);
        let ok = identities_hold(&p, &x, &y).unwrap_or(false);
        out.record(ok, || format!("{p}: x = {x}, y = {y}"));
    }
    out
}

fn identities_hold(
    p: &Arc<Presentation>,
    x: &QuaternionElement,
    y: &QuaternionElement,
) -> Result<bool, crate::quaternion::QuatError> {
    let e = p.e();
    let cayley = (&(&x.square() + &x.scale(&x.trace())) + &e.scale(&x.norm())).is_zero();
    let xy = x.try_mul(y)?;
    let multiplicative = xy.norm() == &x.norm() * &y.norm();
    let anti = &xy + &y.try_mul(x)?;
    let linear = &(&e.scale(&x.try_polar(y)?) + &y.scale(&x.trace())) + &x.scale(&y.trace());
    let first_pairing = xy.try_polar(y)? == &x.trace() * &y.norm();
    let second_pairing = xy.try_polar(&e)? == x.try_polar(&y.conjugate())?;
    Ok(cayley && multiplicative && anti == linear && first_pairing && second_pairing)
}

/// Bilinearity (`[a,b)` is additive in `a` and multiplicative in `b`,
/// `((a,b))` additive in both), symmetry of `((a,b))`, the reduction `((a,b)) = [ab,b)` and
/// independence of the representatives modulo ℘ and squares.
pub fn symbol_relations<R: Rng + ?Sized>(
    desc: FieldDescriptor,
    n: usize,
    rng: &mut R,
) -> SuiteResult {
    let mut out = SuiteResult::new("symbol_relations", desc);
    let inv = |kind, a: &FieldElement, b: &FieldElement| symbol_invariant(kind, a, b).ok();
    for _ in 0..n {
        let a1 = random_element(desc, rng);
        let a2 = random_element(desc, rng);
        let b1 = nonzero(desc, rng);
        let b2 = nonzero(desc, rng);
        let c = random_element(desc, rng);
        let u = nonzero(desc, rng);
        let xor = |p: Option<u8>, q: Option<u8>| Some(p? ^ q?);
        let checks = [
            inv(Kind::As, &(&a1 + &a2), &b1)
                == xor(inv(Kind::As, &a1, &b1), inv(Kind::As, &a2, &b1)),
            inv(Kind::As, &a1, &(&b1 * &b2))
                == xor(inv(Kind::As, &a1, &b1), inv(Kind::As, &a1, &b2)),
            inv(Kind::Bil, &(&b1 + &b2), &u)
                == xor(inv(Kind::Bil, &b1, &u), inv(Kind::Bil, &b2, &u)),
            inv(Kind::Bil, &u, &(&b1 + &b2))
                == xor(inv(Kind::Bil, &u, &b1), inv(Kind::Bil, &u, &b2)),
            inv(Kind::Bil, &b1, &b2) == inv(Kind::Bil, &b2, &b1),
            inv(Kind::Bil, &a1, &b1) == inv(Kind::As, &(&a1 * &b1), &b1),
            inv(Kind::As, &(&a1 + &c.wp()), &b1) == inv(Kind::As, &a1, &b1),
            inv(Kind::As, &a1, &(&b1 * &u.square())) == inv(Kind::As, &a1, &b1),
            inv(Kind::As, &a1, &b1).is_some(),
        ];
        out.record(checks.iter().all(|&c| c), || {
            format!("a1 = {a1}, a2 = {a2}, b1 = {b1}, b2 = {b2}, c = {c}, u = {u}")
        });
    }
    out
}

/// The ambient used for slot suites: `[1,1)` over finite fields, the
/// division algebra `[τ, t)` over Laurent fields.
pub fn default_ambient(desc: FieldDescriptor) -> Arc<Presentation> {
    if desc.is_finite() {
        Presentation::artin_schreier(desc.one(), desc.one())
    } else {
        Presentation::artin_schreier(desc.trace_one(), desc.t())
    }
    .expect("b is nonzero")
}

/// Sampled equal-class instances, solved and verified. Every other instance
/// of (ii)/(iii) is sampled with orthogonal `y`s.
pub fn common_slots<R: Rng + ?Sized>(
    desc: FieldDescriptor,
    theorem: Theorem,
    n: usize,
    rng: &mut R,
) -> SuiteResult {
    let mut out = SuiteResult::new(&format!("common_slot_{theorem}"), desc);
    let ambient = default_ambient(desc);
    let options = SampleOptions::default();
    for i in 0..n {
        let orthogonal = theorem != Theorem::CommonB && i % 2 == 1;
        let result = sample_instance(&ambient, theorem.kind(), orthogonal, &options, rng)
            .map_err(|e| e.to_string())
            .and_then(|inst| common_slot(theorem, &inst).map_err(|e| e.to_string()));
        match result {
            Ok(r) => {
                let ok = r.report.all_pass();
                out.record(ok, || {
                    let failed: Vec<_> = r.report.failures().map(|c| c.name.as_str()).collect();
                    format!("instance {i}: failed checks {}", failed.join(", "))
                });
            }
            Err(err) => out.record(false, || format!("instance {i}: {err}")),
        }
    }
    out
}

/// Residue invariant against the isotropy search: exhaustive over finite
/// fields, the window v in [-1, 1] with two coefficients over Laurent fields.
pub fn cross_validation(desc: FieldDescriptor) -> SuiteResult {
    let mut out = SuiteResult::new("cross_validation", desc);
    let window = if desc.is_finite() {
        Window::standard()
    } else {
        Window::new(-1, 1, 2)
    };
    match Grid::from_window(desc, &window)
        .map_err(|e| e.to_string())
        .and_then(|g| cross_validate_invariant(&g).map_err(|e| e.to_string()))
    {
        Ok(cv) => {
            for v in &cv.violations {
                out.record(false, || {
                    format!("a = {}, b = {}, invariant {}", v.a, v.b, v.invariant)
                });
            }
            out.cases = cv.points;
        }
        Err(err) => out.record(false, || err),
    }
    out
}
