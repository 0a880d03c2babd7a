//! Quaternion algebras in the two characteristic-2 presentations.
//!
//! Elements are stored in the basis `e, i, j, k = ij` for both kinds:
//!
//! * `[a,b)` (`Kind::As`): `i² + i = a`, `j² = b`, `ij + ji = j`;
//! * `((a,b))` (`Kind::Bil`): `i² = a`, `j² = b`, `ij + ji = e`.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use rand::Rng;
use thiserror::Error;

use crate::fields::{
    enumerate_elements, quadratic_root, random_polynomial, FieldDescriptor, FieldElement,
    FieldError, Window,
};
use crate::linalg;
use crate::quadspace::{Block, QuadError, QuadraticForm, Vector};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum QuatError {
    #[error("elements belong to different presentations")]
    PresentationMismatch,
    #[error("invalid presentation: {0}")]
    InvalidPresentation(String),
    #[error("no admissible sample after {attempts} attempts")]
    RetryBudgetExhausted { attempts: usize },
    #[error("no embedding found in the search window")]
    SearchExhausted,
    #[error(transparent)]
    Quad(#[from] QuadError),
    #[error(transparent)]
    Field(#[from] FieldError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Kind {
    /// `[a,b)`
    As,
    /// `((a,b))`
    Bil,
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Kind::As => "as",
            Kind::Bil => "bil",
        })
    }
}

impl FromStr for Kind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s.to_ascii_lowercase().as_str() {
            "as" => Ok(Kind::As),
            "bil" => Ok(Kind::Bil),
            other => Err(format!(
                "unknown symbol kind {other:?} (expected as or bil)"
            )),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Presentation {
    kind: Kind,
    a: FieldElement,
    b: FieldElement,
}

impl Presentation {
    /// `[a,b)` or `((a,b))`. `[a,0)` is rejected: it is not an algebra.
    pub fn new(kind: Kind, a: FieldElement, b: FieldElement) -> Result<Arc<Self>, QuatError> {
        if a.descriptor() != b.descriptor() {
            return Err(FieldError::DescriptorMismatch(a.descriptor(), b.descriptor()).into());
        }
        if kind == Kind::As && b.is_zero() {
            return Err(QuatError::InvalidPresentation(
                "[a,b) requires b != 0".into(),
            ));
        }
        Ok(Arc::new(Presentation { kind, a, b }))
    }

    pub fn artin_schreier(a: FieldElement, b: FieldElement) -> Result<Arc<Self>, QuatError> {
        Presentation::new(Kind::As, a, b)
    }

    pub fn bilinear(a: FieldElement, b: FieldElement) -> Result<Arc<Self>, QuatError> {
        Presentation::new(Kind::Bil, a, b)
    }

    pub fn kind(&self) -> Kind {
        self.kind
    }

    pub fn a(&self) -> &FieldElement {
        &self.a
    }

    pub fn b(&self) -> &FieldElement {
        &self.b
    }

    pub fn descriptor(&self) -> FieldDescriptor {
        self.a.descriptor()
    }

    pub fn element(
        self: &Arc<Self>,
        coords: [FieldElement; 4],
    ) -> Result<QuaternionElement, QuatError> {
        let desc = self.descriptor();
        if let Some(c) = coords.iter().find(|c| c.descriptor() != desc) {
            return Err(FieldError::DescriptorMismatch(desc, c.descriptor()).into());
        }
        Ok(QuaternionElement {
            p: Arc::clone(self),
            c: coords,
        })
    }

    fn basis(self: &Arc<Self>, n: usize) -> QuaternionElement {
        let d = self.descriptor();
        let mut c = [d.zero(), d.zero(), d.zero(), d.zero()];
        c[n] = d.one();
        QuaternionElement {
            p: Arc::clone(self),
            c,
        }
    }

    pub fn e(self: &Arc<Self>) -> QuaternionElement {
        self.basis(0)
    }

    pub fn i(self: &Arc<Self>) -> QuaternionElement {
        self.basis(1)
    }

    pub fn j(self: &Arc<Self>) -> QuaternionElement {
        self.basis(2)
    }

    /// `ij`.
    pub fn k(self: &Arc<Self>) -> QuaternionElement {
        self.basis(3)
    }

    pub fn scalar(self: &Arc<Self>, c: FieldElement) -> QuaternionElement {
        self.e().scale(&c)
    }

    /// The norm form as a block form, with the basis it is stated in.
    pub fn norm_form(&self) -> NormForm {
        let d = self.descriptor();
        let block = |scale: FieldElement, alpha: FieldElement, beta: FieldElement| Block {
            scale,
            alpha,
            beta,
        };
        let (blocks, permutation) = match self.kind {
            Kind::As => (
                vec![
                    block(d.one(), d.one(), self.a.clone()),
                    block(self.b.clone(), d.one(), self.a.clone()),
                ],
                [0, 1, 2, 3],
            ),
            Kind::Bil => (
                vec![
                    block(d.one(), d.one(), &self.a * &self.b),
                    block(d.one(), self.a.clone(), self.b.clone()),
                ],
                [0, 3, 1, 2],
            ),
        };
        NormForm {
            form: QuadraticForm::new(d, blocks).expect("nonzero scales"),
            permutation,
        }
    }
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            Kind::As => write!(f, "[{}, {})", self.a, self.b),
            Kind::Bil => write!(f, "(({}, {}))", self.a, self.b),
        }
    }
}

/// A presentation's norm form. `permutation[m]` is the storage coordinate
/// (in `e, i, j, ij`) feeding form coordinate `m`: the identity for `[a,b)`,
/// and the basis `e, ij, i, j` for `((a,b))`.
#[derive(Clone, Debug, PartialEq)]
pub struct NormForm {
    pub form: QuadraticForm,
    pub permutation: [usize; 4],
}

impl NormForm {
    pub fn to_form_coords(&self, x: &QuaternionElement) -> Vector {
        Vector(self.permutation.iter().map(|&s| x.c[s].clone()).collect())
    }

    pub fn from_form_coords(
        &self,
        p: &Arc<Presentation>,
        v: &Vector,
    ) -> Result<QuaternionElement, QuatError> {
        if v.len() != 4 {
            return Err(QuadError::DimensionMismatch {
                expected: 4,
                found: v.len(),
            }
            .into());
        }
        let d = p.descriptor();
        let mut c = [d.zero(), d.zero(), d.zero(), d.zero()];
        for (m, &s) in self.permutation.iter().enumerate() {
            c[s] = v.0[m].clone();
        }
        p.element(c)
    }
}

#[derive(Clone, Debug)]
pub struct QuaternionElement {
    p: Arc<Presentation>,
    c: [FieldElement; 4],
}

impl PartialEq for QuaternionElement {
    fn eq(&self, other: &Self) -> bool {
        self.same_algebra(other) && self.c == other.c
    }
}

impl QuaternionElement {
    pub fn presentation(&self) -> &Arc<Presentation> {
        &self.p
    }

    pub fn coords(&self) -> &[FieldElement; 4] {
        &self.c
    }

    fn same_algebra(&self, other: &QuaternionElement) -> bool {
        Arc::ptr_eq(&self.p, &other.p) || *self.p == *other.p
    }

    fn check(&self, other: &QuaternionElement) -> Result<(), QuatError> {
        if self.same_algebra(other) {
            Ok(())
        } else {
            Err(QuatError::PresentationMismatch)
        }
    }

    fn with(&self, c: [FieldElement; 4]) -> QuaternionElement {
        QuaternionElement {
            p: Arc::clone(&self.p),
            c,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(FieldElement::is_zero)
    }

    /// Whether the element lies in `F·e`.
    pub fn is_scalar(&self) -> bool {
        self.c[1..].iter().all(FieldElement::is_zero)
    }

    pub fn try_add(&self, other: &QuaternionElement) -> Result<QuaternionElement, QuatError> {
        self.check(other)?;
        Ok(self.with(std::array::from_fn(|n| &self.c[n] + &other.c[n])))
    }

    pub fn scale(&self, s: &FieldElement) -> QuaternionElement {
        self.with(std::array::from_fn(|n| s * &self.c[n]))
    }

    pub fn try_mul(&self, other: &QuaternionElement) -> Result<QuaternionElement, QuatError> {
        self.check(other)?;
        let [x0, x1, x2, x3] = &self.c;
        let [y0, y1, y2, y3] = &other.c;
        let (a, b) = (&self.p.a, &self.p.b);
        let ab = a * b;
        let sum =
            |terms: &[FieldElement]| terms.iter().fold(a.descriptor().zero(), |acc, t| &acc + t);
        let c = match self.p.kind {
            Kind::As => [
                sum(&[
                    x0 * y0,
                    a * &(x1 * y1),
                    b * &(x2 * y2),
                    b * &(x2 * y3),
                    &ab * &(x3 * y3),
                ]),
                sum(&[x0 * y1, x1 * y0, x1 * y1, b * &(x2 * y3), b * &(x3 * y2)]),
                sum(&[x0 * y2, x2 * y0, a * &(x1 * y3), x2 * y1, a * &(x3 * y1)]),
                sum(&[x0 * y3, x3 * y0, x1 * y2, x1 * y3, x2 * y1]),
            ],
            Kind::Bil => [
                sum(&[
                    x0 * y0,
                    a * &(x1 * y1),
                    x2 * y1,
                    b * &(x2 * y2),
                    &ab * &(x3 * y3),
                ]),
                sum(&[x0 * y1, x1 * y0, b * &(x2 * y3), x3 * y1, b * &(x3 * y2)]),
                sum(&[x0 * y2, x2 * y0, a * &(x1 * y3), x2 * y3, a * &(x3 * y1)]),
                sum(&[x0 * y3, x3 * y0, x1 * y2, x2 * y1, x3 * y3]),
            ],
        };
        Ok(self.with(c))
    }

    pub fn norm(&self) -> FieldElement {
        let [x0, x1, x2, x3] = &self.c;
        let (a, b) = (&self.p.a, &self.p.b);
        match self.p.kind {
            Kind::As => {
                let h1 = &(&x0.square() + &(x0 * x1)) + &(a * &x1.square());
                let h2 = &(&x2.square() + &(x2 * x3)) + &(a * &x3.square());
                &h1 + &(b * &h2)
            }
            Kind::Bil => {
                let h1 = &(&x0.square() + &(x0 * x3)) + &(&(a * b) * &x3.square());
                let h2 = &(&(a * &x1.square()) + &(x1 * x2)) + &(b * &x2.square());
                &h1 + &h2
            }
        }
    }

    /// The polar form of the norm, `N(x+y) + N(x) + N(y)`.
    pub fn try_polar(&self, other: &QuaternionElement) -> Result<FieldElement, QuatError> {
        self.check(other)?;
        let [x0, x1, x2, x3] = &self.c;
        let [y0, y1, y2, y3] = &other.c;
        Ok(match self.p.kind {
            Kind::As => {
                let h = &(x2 * y3) + &(x3 * y2);
                &(&(x0 * y1) + &(x1 * y0)) + &(&self.p.b * &h)
            }
            Kind::Bil => &(&(x0 * y3) + &(x3 * y0)) + &(&(x1 * y2) + &(x2 * y1)),
        })
    }

    /// `polar(x, e)`, the reduced trace.
    pub fn trace(&self) -> FieldElement {
        match self.p.kind {
            Kind::As => self.c[1].clone(),
            Kind::Bil => self.c[3].clone(),
        }
    }

    /// `x̄ = polar(x,e)·e + x`.
    pub fn conjugate(&self) -> QuaternionElement {
        let mut c = self.c.clone();
        c[0] = &c[0] + &self.trace();
        self.with(c)
    }

    pub fn square(&self) -> QuaternionElement {
        self.try_mul(self).expect("same algebra")
    }
}

impl fmt::Display for QuaternionElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({}, {}, {}, {})",
            self.c[0], self.c[1], self.c[2], self.c[3]
        )
    }
}

macro_rules! forward_quat {
    ($trait:ident, $method:ident, $try:ident) => {
        impl<'a> std::ops::$trait<&'a QuaternionElement> for &'a QuaternionElement {
            type Output = QuaternionElement;

            /// Panics when the operands live in different algebras.
            fn $method(self, rhs: &'a QuaternionElement) -> QuaternionElement {
                self.$try(rhs).unwrap_or_else(|e| panic!("{e}"))
            }
        }
    };
}

forward_quat!(Add, add, try_add);
forward_quat!(Mul, mul, try_mul);

/// The unital subalgebra generated by some elements.
#[derive(Clone, Debug)]
pub struct SubalgebraBasis {
    pub generators: Vec<QuaternionElement>,
    /// Row-reduced spanning set, as elements.
    pub closure: Vec<QuaternionElement>,
    pub dimension: usize,
}

pub fn generated_subalgebra(
    ambient: &Arc<Presentation>,
    generators: &[QuaternionElement],
) -> Result<SubalgebraBasis, QuatError> {
    let e = ambient.e();
    for g in generators {
        e.check(g)?;
    }
    let reduce = |elems: Vec<QuaternionElement>| -> Vec<QuaternionElement> {
        let rows = elems.iter().map(|x| x.c.to_vec()).collect();
        let ech = linalg::row_reduce(rows, 4);
        ech.rows[..ech.pivots.len()]
            .iter()
            .map(|r| e.with(std::array::from_fn(|n| r[n].clone())))
            .collect()
    };
    let mut span = vec![e.clone()];
    span.extend(generators.iter().cloned());
    let mut basis = reduce(span);
    loop {
        let mut grown = basis.clone();
        for x in &basis {
            for y in &basis {
                grown.push(x * y);
            }
        }
        let next = reduce(grown);
        if next.len() == basis.len() {
            break;
        }
        basis = next;
    }
    Ok(SubalgebraBasis {
        generators: generators.to_vec(),
        dimension: basis.len(),
        closure: basis,
    })
}

/// Outcome of checking that `(x, y)` realizes a target presentation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationReport {
    /// `x² + x = a e` for `[a,b)`, `x² = a e` for `((a,b))`.
    pub first: bool,
    /// `y² = b e`.
    pub second: bool,
    /// `xy + yx = y` for `[a,b)`, `xy + yx = e` for `((a,b))`.
    pub cross: bool,
    /// Dimension of the unital subalgebra generated by `x` and `y`.
    pub dimension: usize,
}

impl RelationReport {
    /// All relations hold and `e, x, y, xy` is a basis.
    pub fn holds(&self) -> bool {
        self.first && self.second && self.cross && self.dimension == 4
    }
}

/// Check that `x, y` (elements of one ambient algebra) satisfy the defining
/// relations of `target`.
pub fn check_relations(
    target: &Presentation,
    x: &QuaternionElement,
    y: &QuaternionElement,
) -> Result<RelationReport, QuatError> {
    x.check(y)?;
    let ambient = x.presentation();
    if target.descriptor() != ambient.descriptor() {
        return Err(
            FieldError::DescriptorMismatch(target.descriptor(), ambient.descriptor()).into(),
        );
    }
    let x2 = x.square();
    let first = match target.kind {
        Kind::As => (&x2 + x) == ambient.scalar(target.a.clone()),
        Kind::Bil => x2 == ambient.scalar(target.a.clone()),
    };
    let second = y.square() == ambient.scalar(target.b.clone());
    let anti = &(x * y) + &(y * x);
    let cross = match target.kind {
        Kind::As => anti == *y,
        Kind::Bil => anti == ambient.e(),
    };
    let dimension = generated_subalgebra(ambient, &[x.clone(), y.clone()])?.dimension;
    Ok(RelationReport {
        first,
        second,
        cross,
        dimension,
    })
}

/// Knobs for [`sample_presentation`].
#[derive(Clone, Debug)]
pub struct SampleOptions {
    /// Random coefficients are Laurent polynomials with valuation in
    /// `[min_val, max_val]` and `terms` coefficients (uniform on finite fields).
    pub min_val: i64,
    pub max_val: i64,
    pub terms: usize,
    pub retries: usize,
    /// Force the sampled `y` to be orthogonal to this element.
    pub orthogonal_to: Option<QuaternionElement>,
}

impl Default for SampleOptions {
    fn default() -> Self {
        SampleOptions {
            min_val: -1,
            max_val: 1,
            terms: 2,
            retries: 64,
            orthogonal_to: None,
        }
    }
}

/// A presentation realized inside an ambient algebra by generators `(x, y)`.
#[derive(Clone, Debug)]
pub struct Realization {
    pub presentation: Arc<Presentation>,
    pub x: QuaternionElement,
    pub y: QuaternionElement,
}

impl Realization {
    /// A presentation realized by its own generators `(i, j)`.
    pub fn defining(p: &Arc<Presentation>) -> Self {
        Realization {
            presentation: Arc::clone(p),
            x: p.i(),
            y: p.j(),
        }
    }

    pub fn check(&self) -> Result<RelationReport, QuatError> {
        check_relations(&self.presentation, &self.x, &self.y)
    }
}

/// Draw a random presentation of the ambient algebra together with the
/// generators realizing it, by running the doubling construction backwards:
/// pick `x` (with `polar(x,e) = 1` for `[a,b)`, `x ⊥ e` for `((a,b))`), set
/// `a = N(x)`, pick a suitable `y` with `N(y) != 0` and set `b = N(y)`.
pub fn sample_presentation<R: Rng + ?Sized>(
    ambient: &Arc<Presentation>,
    kind: Kind,
    options: &SampleOptions,
    rng: &mut R,
) -> Result<Realization, QuatError> {
    let desc = ambient.descriptor();
    let nf = ambient.norm_form();
    let q = &nf.form;
    let e = ambient.e();
    let ev = nf.to_form_coords(&e);
    let extra = match &options.orthogonal_to {
        Some(z) => {
            e.check(z)?;
            Some(nf.to_form_coords(z))
        }
        None => None,
    };
    let coin =
        |rng: &mut R| random_polynomial(desc, options.min_val, options.max_val, options.terms, rng);
    let combine = |base: Vector, dirs: &[Vector], rng: &mut R| {
        dirs.iter()
            .fold(base, |acc, d| acc.add(&d.scale(&coin(rng))))
    };
    for _ in 0..options.retries {
        let x = match kind {
            Kind::As => {
                let p = q.solve_prescribed_pairings(&[(ev.clone(), desc.one())])?;
                let dirs = q.orthogonal_complement(std::slice::from_ref(&ev))?;
                combine(p, &dirs, rng)
            }
            Kind::Bil => {
                let dirs = q.orthogonal_complement(std::slice::from_ref(&ev))?;
                combine(Vector::zero(desc, 4), &dirs, rng)
            }
        };
        let a = q.evaluate(&x)?;
        if kind == Kind::Bil && a.is_zero() {
            continue;
        }
        let mut span = vec![ev.clone(), x.clone()];
        span.extend(extra.iter().cloned());
        let y = match kind {
            Kind::As => {
                let dirs = q.orthogonal_complement(&span)?;
                combine(Vector::zero(desc, 4), &dirs, rng)
            }
            Kind::Bil => {
                let mut constraints = vec![(ev.clone(), desc.zero()), (x.clone(), desc.one())];
                if let Some(z) = &extra {
                    constraints.push((z.clone(), desc.zero()));
                }
                let p = match q.solve_prescribed_pairings(&constraints) {
                    Ok(p) => p,
                    Err(QuadError::DependentConstraints) => continue,
                    Err(err) => return Err(err.into()),
                };
                let dirs = q.orthogonal_complement(&span)?;
                combine(p, &dirs, rng)
            }
        };
        let b = q.evaluate(&y)?;
        if b.is_zero() {
            continue;
        }
        let presentation = Presentation::new(kind, a, b)?;
        let x = nf.from_form_coords(ambient, &x)?;
        let y = nf.from_form_coords(ambient, &y)?;
        if check_relations(&presentation, &x, &y)?.holds() {
            return Ok(Realization { presentation, x, y });
        }
    }
    Err(QuatError::RetryBudgetExhausted {
        attempts: options.retries,
    })
}

/// Find `(x, y)` in `ambient` realizing `target`.
///
/// The polar conditions on `x` (then on `y`) are solved linearly; the
/// remaining affine space is searched by drawing all but the last free
/// coefficient from `window` and solving the norm equation for the last one.
/// Over a finite field the search is exhaustive, so `SearchExhausted` proves
/// that no embedding exists; over a Laurent field it is one-sided.
pub fn embed_presentation(
    ambient: &Arc<Presentation>,
    target: &Presentation,
    window: &Window,
) -> Result<(QuaternionElement, QuaternionElement), QuatError> {
    let desc = ambient.descriptor();
    if target.descriptor() != desc {
        return Err(FieldError::DescriptorMismatch(desc, target.descriptor()).into());
    }
    let nf = ambient.norm_form();
    let q = &nf.form;
    let ev = nf.to_form_coords(&ambient.e());
    let elements: Vec<FieldElement> = enumerate_elements(desc, window)?.collect();
    let w = elements.len() as u128;
    window.check(w.saturating_pow(3))?;

    let x_base = match target.kind {
        Kind::As => q.solve_prescribed_pairings(&[(ev.clone(), desc.one())])?,
        Kind::Bil => Vector::zero(desc, 4),
    };
    let x_dirs = q.orthogonal_complement(std::slice::from_ref(&ev))?;
    for xv in norm_level_set(q, &x_base, &x_dirs, &target.a, &elements)? {
        let span = [ev.clone(), xv.clone()];
        let y_base = match target.kind {
            Kind::As => Vector::zero(desc, 4),
            Kind::Bil => match q
                .solve_prescribed_pairings(&[(ev.clone(), desc.zero()), (xv.clone(), desc.one())])
            {
                Ok(p) => p,
                Err(QuadError::DependentConstraints) => continue,
                Err(err) => return Err(err.into()),
            },
        };
        let y_dirs = q.orthogonal_complement(&span)?;
        let x = nf.from_form_coords(ambient, &xv)?;
        for yv in norm_level_set(q, &y_base, &y_dirs, &target.b, &elements)? {
            let y = nf.from_form_coords(ambient, &yv)?;
            if check_relations(target, &x, &y)?.holds() {
                return Ok((x, y));
            }
        }
    }
    Err(QuatError::SearchExhausted)
}

/// Points `base + Σ c_m dirs[m]` with `N = value`: every coefficient but the
/// last ranges over `elements`, the last solves a quadratic (both roots; all
/// of `elements` when the quadratic degenerates to `0 = 0`).
fn norm_level_set(
    q: &QuadraticForm,
    base: &Vector,
    dirs: &[Vector],
    value: &FieldElement,
    elements: &[FieldElement],
) -> Result<Vec<Vector>, QuatError> {
    let Some((last, rest)) = dirs.split_last() else {
        return Ok(if q.evaluate(base)? == *value {
            vec![base.clone()]
        } else {
            Vec::new()
        });
    };
    let na = q.evaluate(last)?;
    let mut out = Vec::new();
    let mut digits = vec![0usize; rest.len()];
    loop {
        let w = rest
            .iter()
            .zip(&digits)
            .fold(base.clone(), |acc, (d, &i)| acc.add(&d.scale(&elements[i])));
        let nb = q.polar(&w, last)?;
        let nc = &q.evaluate(&w)? + value;
        let roots = if na.is_zero() && nb.is_zero() {
            if nc.is_zero() {
                elements.to_vec()
            } else {
                Vec::new()
            }
        } else {
            match quadratic_root(&na, &nb, &nc) {
                Ok(Some(r)) if na.is_zero() => vec![r],
                Ok(Some(r)) => {
                    let other = &r + &nb.try_div(&na)?;
                    if other == r {
                        vec![r]
                    } else {
                        vec![r, other]
                    }
                }
                Ok(None) | Err(FieldError::PrecisionLoss(_)) => Vec::new(),
                Err(err) => return Err(err.into()),
            }
        };
        out.extend(roots.iter().map(|c| w.add(&last.scale(c))));
        if !step(&mut digits, elements.len()) {
            break;
        }
    }
    Ok(out)
}

fn step(digits: &mut [usize], radix: usize) -> bool {
    for d in digits.iter_mut().rev() {
        *d += 1;
        if *d < radix {
            return true;
        }
        *d = 0;
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;
    use std::collections::BTreeMap;

    fn f2t() -> FieldDescriptor {
        FieldDescriptor::laurent(1, 16).unwrap()
    }

    fn standing() -> Arc<Presentation> {
        let d = f2t();
        Presentation::artin_schreier(d.one(), d.t()).unwrap()
    }

    #[test]
    fn basis_products() {
        let p = standing();
        let (e, i, j, k) = (p.e(), p.i(), p.j(), p.k());
        assert_eq!(&i * &j, k);
        assert_eq!(&j * &i, &k + &j);
        assert_eq!(&i * &i, &e + &i);
        let d = f2t();
        let q = Presentation::bilinear(d.t(), d.one()).unwrap();
        assert_eq!(&q.j() * &q.i(), &q.k() + &q.e());
    }

    /// Normal form of a word in `i, j` using the defining relations, with
    /// coefficients tracked per basis word.
    fn rewrite(p: &Presentation, word: Vec<u8>) -> BTreeMap<Vec<u8>, FieldElement> {
        let d = p.descriptor();
        let mut todo = vec![(word, d.one())];
        let mut done: BTreeMap<Vec<u8>, FieldElement> = BTreeMap::new();
        while let Some((w, c)) = todo.pop() {
            let pos = w
                .windows(2)
                .position(|s| s == [1, 1] || s == [2, 2] || s == [2, 1]);
            let Some(n) = pos else {
                let slot = done.entry(w).or_insert_with(|| d.zero());
                *slot = &*slot + &c;
                continue;
            };
            let (pre, post) = (&w[..n], &w[n + 2..]);
            let join = |mid: &[u8]| [pre, mid, post].concat();
            match (w[n], w[n + 1], p.kind()) {
                (1, 1, Kind::As) => {
                    todo.push((join(&[]), &c * p.a()));
                    todo.push((join(&[1]), c));
                }
                (1, 1, Kind::Bil) => todo.push((join(&[]), &c * p.a())),
                (2, 2, _) => todo.push((join(&[]), &c * p.b())),
                (2, 1, Kind::As) => {
                    todo.push((join(&[1, 2]), c.clone()));
                    todo.push((join(&[2]), c));
                }
                (2, 1, Kind::Bil) => {
                    todo.push((join(&[1, 2]), c.clone()));
                    todo.push((join(&[]), c));
                }
                _ => unreachable!(),
            }
        }
        done
    }

    #[test]
    fn multiplication_table_matches_rewriting() {
        let d = FieldDescriptor::finite(3).unwrap();
        let words: [Vec<u8>; 4] = [vec![], vec![1], vec![2], vec![1, 2]];
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for kind in [Kind::As, Kind::Bil] {
            for _ in 0..10 {
                let a = crate::fields::random_element(d, &mut rng);
                let b = &crate::fields::random_element(d, &mut rng) + &d.one();
                let b = if b.is_zero() { d.one() } else { b };
                let p = Presentation::new(kind, a, b).unwrap();
                let basis = [p.e(), p.i(), p.j(), p.k()];
                for (m, u) in words.iter().enumerate() {
                    for (n, v) in words.iter().enumerate() {
                        let nf = rewrite(&p, [u.clone(), v.clone()].concat());
                        let prod = &basis[m] * &basis[n];
                        for (slot, w) in words.iter().enumerate() {
                            let expect = nf.get(w).cloned().unwrap_or_else(|| d.zero());
                            assert_eq!(prod.coords()[slot], expect, "{kind} {u:?}*{v:?}");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn norm_examples() {
        let d = f2t();
        let (a, b) = (d.t().square(), d.t());
        let p = Presentation::artin_schreier(a.clone(), b.clone()).unwrap();
        assert!(p.e().norm().is_one());
        assert_eq!(p.j().norm(), b);
        let q = Presentation::bilinear(a.clone(), b.clone()).unwrap();
        assert_eq!(q.i().norm(), a);
        assert_eq!(q.k().norm(), &a * &b);
    }

    #[test]
    fn conjugation_examples() {
        let p = standing();
        assert_eq!(p.e().conjugate(), p.e());
        assert_eq!(p.i().conjugate(), &p.i() + &p.e());
        assert_eq!(p.j().conjugate(), p.j());
        let i = p.i();
        assert_eq!(&i * &i.conjugate(), p.scalar(i.norm()));
    }

    #[test]
    fn norm_form_blocks() {
        let p = standing();
        let nf = p.norm_form();
        let d = f2t();
        let blocks = nf.form.blocks();
        assert!(blocks[0].scale.is_one() && blocks[0].alpha.is_one() && blocks[0].beta.is_one());
        assert_eq!(blocks[1].scale, d.t());
        let q = Presentation::bilinear(d.t(), d.one()).unwrap();
        let nf = q.norm_form();
        assert_eq!(nf.form.blocks()[0].beta, d.t());
        assert_eq!(nf.form.blocks()[1].alpha, d.t());
        assert_eq!(nf.permutation, [0, 3, 1, 2]);
    }

    #[test]
    fn standing_instance_relations() {
        let p = standing();
        let d = f2t();
        let t = d.t();
        let one_t = &d.one() + &t;
        let report = check_relations(&p, &p.i(), &p.j()).unwrap();
        assert!(report.holds());
        let target =
            Presentation::artin_schreier(d.polynomial(0, &[1, 1, 1]), &t * &one_t.square())
                .unwrap();
        let x = &p.i() + &p.scalar(t.clone());
        let y = p.j().scale(&one_t);
        assert!(check_relations(&target, &x, &y).unwrap().holds());
        let bad = check_relations(&p, &p.i(), &p.i()).unwrap();
        assert_eq!(bad.dimension, 2);
        assert!(!bad.second);
    }

    #[test]
    fn mismatched_ambients_are_rejected() {
        let d = f2t();
        let p = standing();
        let q = Presentation::artin_schreier(d.t(), d.t()).unwrap();
        assert_eq!(p.i().try_mul(&q.i()), Err(QuatError::PresentationMismatch));
        assert!(check_relations(&p, &p.i(), &q.j()).is_err());
    }

    #[test]
    fn samples_pass_relation_checks() {
        let p = standing();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for kind in [Kind::As, Kind::Bil] {
            for _ in 0..20 {
                let s = sample_presentation(&p, kind, &SampleOptions::default(), &mut rng).unwrap();
                assert_eq!(s.presentation.kind(), kind);
                assert!(check_relations(&s.presentation, &s.x, &s.y)
                    .unwrap()
                    .holds());
            }
        }
    }

    #[test]
    fn zero_budget_is_exhausted() {
        let d = FieldDescriptor::finite(2).unwrap();
        let p = Presentation::artin_schreier(d.one(), d.one()).unwrap();
        let opts = SampleOptions {
            retries: 0,
            ..SampleOptions::default()
        };
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        assert_eq!(
            sample_presentation(&p, Kind::As, &opts, &mut rng).unwrap_err(),
            QuatError::RetryBudgetExhausted { attempts: 0 }
        );
    }

    #[test]
    fn embedding_examples() {
        let d = f2t();
        let t = d.t();
        let p = standing();
        let target = Presentation::artin_schreier(d.polynomial(0, &[1, 1, 1]), t.clone()).unwrap();
        let (x, y) = embed_presentation(&p, &target, &Window::new(0, 1, 2)).unwrap();
        assert!(check_relations(&target, &x, &y).unwrap().holds());

        let g = FieldDescriptor::finite(2).unwrap();
        let split = Presentation::artin_schreier(g.one(), g.one()).unwrap();
        let target = Presentation::artin_schreier(g.zero(), g.one()).unwrap();
        let (x, y) = embed_presentation(&split, &target, &Window::standard()).unwrap();
        assert!(check_relations(&target, &x, &y).unwrap().holds());

        // b/t is not a square, so y needs a j-component the empty window lacks
        let target =
            Presentation::artin_schreier(d.one(), &t * &d.polynomial(0, &[1, 1, 1])).unwrap();
        assert_eq!(
            embed_presentation(&p, &target, &Window::empty()),
            Err(QuatError::SearchExhausted)
        );
        assert!(embed_presentation(&p, &target, &Window::new(0, 0, 1)).is_ok());
    }
}
