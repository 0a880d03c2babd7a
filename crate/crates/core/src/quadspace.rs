//! Regular quadratic spaces in characteristic 2.
//!
//! A [`QuadraticForm`] is an orthogonal sum of scaled binary blocks
//! `s·[α,β]`, each contributing `s(αX² + XY + βY²)` on two consecutive
//! coordinates. Its polar form `N(x+y) + N(x) + N(y)` has the invertible
//! Gram matrix with `s` in the off-diagonal slots of each block.

use std::fmt;

use thiserror::Error;

use crate::fields::{enumerate_elements, FieldDescriptor, FieldElement, FieldError, Window};
use crate::linalg;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum QuadError {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("constraint vectors are dependent with inconsistent targets")]
    DependentConstraints,
    #[error("transvection axis has norm zero")]
    SingularAxis,
    #[error("block scale must be nonzero")]
    DegenerateBlock,
    #[error(transparent)]
    Field(#[from] FieldError),
}

/// Coordinates over the ambient field.
#[derive(Clone, Debug, PartialEq)]
pub struct Vector(pub Vec<FieldElement>);

impl Vector {
    pub fn zero(desc: FieldDescriptor, dim: usize) -> Self {
        Vector(vec![desc.zero(); dim])
    }

    /// The `i`-th standard basis vector.
    pub fn basis(desc: FieldDescriptor, dim: usize, i: usize) -> Self {
        let mut v = Vector::zero(desc, dim);
        v.0[i] = desc.one();
        v
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn coords(&self) -> &[FieldElement] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(FieldElement::is_zero)
    }

    pub fn add(&self, other: &Vector) -> Vector {
        Vector(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn scale(&self, c: &FieldElement) -> Vector {
        Vector(self.0.iter().map(|a| c * a).collect())
    }
}

impl fmt::Display for Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str(")")
    }
}

/// `scale · (alpha X² + XY + beta Y²)`.
#[derive(Clone, Debug, PartialEq)]
pub struct Block {
    pub scale: FieldElement,
    pub alpha: FieldElement,
    pub beta: FieldElement,
}

impl Block {
    pub fn value(&self, x: &FieldElement, y: &FieldElement) -> FieldElement {
        let inner = &(&(&self.alpha * &x.square()) + &(x * y)) + &(&self.beta * &y.square());
        &self.scale * &inner
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct QuadraticForm {
    desc: FieldDescriptor,
    blocks: Vec<Block>,
}

impl QuadraticForm {
    pub fn new(desc: FieldDescriptor, blocks: Vec<Block>) -> Result<Self, QuadError> {
        for b in &blocks {
            for c in [&b.scale, &b.alpha, &b.beta] {
                if c.descriptor() != desc {
                    return Err(FieldError::DescriptorMismatch(desc, c.descriptor()).into());
                }
            }
            if b.scale.is_zero() {
                return Err(QuadError::DegenerateBlock);
            }
        }
        Ok(QuadraticForm { desc, blocks })
    }

    /// The binary form `[alpha, beta]`.
    pub fn binary(alpha: FieldElement, beta: FieldElement) -> Self {
        let desc = alpha.descriptor();
        QuadraticForm::new(
            desc,
            vec![Block {
                scale: desc.one(),
                alpha,
                beta,
            }],
        )
        .expect("unit scale")
    }

    /// `c · self`; `c` must be nonzero.
    pub fn scaled(&self, c: &FieldElement) -> Result<Self, QuadError> {
        let blocks = self
            .blocks
            .iter()
            .map(|b| Block {
                scale: c * &b.scale,
                ..b.clone()
            })
            .collect();
        QuadraticForm::new(self.desc, blocks)
    }

    /// `self ⊥ other`.
    pub fn orthogonal_sum(&self, other: &QuadraticForm) -> Result<Self, QuadError> {
        let mut blocks = self.blocks.clone();
        blocks.extend(other.blocks.iter().cloned());
        QuadraticForm::new(self.desc, blocks)
    }

    pub fn descriptor(&self) -> FieldDescriptor {
        self.desc
    }

    pub fn blocks(&self) -> &[Block] {
        &self.blocks
    }

    pub fn dimension(&self) -> usize {
        2 * self.blocks.len()
    }

    fn check_dim(&self, v: &Vector) -> Result<(), QuadError> {
        if v.len() != self.dimension() {
            return Err(QuadError::DimensionMismatch {
                expected: self.dimension(),
                found: v.len(),
            });
        }
        if let Some(c) = v.0.iter().find(|c| c.descriptor() != self.desc) {
            return Err(FieldError::DescriptorMismatch(self.desc, c.descriptor()).into());
        }
        Ok(())
    }

    pub fn evaluate(&self, v: &Vector) -> Result<FieldElement, QuadError> {
        self.check_dim(v)?;
        Ok(self
            .blocks
            .iter()
            .enumerate()
            .fold(self.desc.zero(), |acc, (k, b)| {
                &acc + &b.value(&v.0[2 * k], &v.0[2 * k + 1])
            }))
    }

    /// The polar form `N(x+y) + N(x) + N(y)`, computed from the Gram matrix.
    pub fn polar(&self, x: &Vector, y: &Vector) -> Result<FieldElement, QuadError> {
        self.check_dim(x)?;
        self.check_dim(y)?;
        Ok(self
            .gram_row(x)
            .iter()
            .zip(&y.0)
            .fold(self.desc.zero(), |acc, (g, c)| &acc + &(g * c)))
    }

    /// `G v`, so that `polar(v, u) = (G v) · u`.
    fn gram_row(&self, v: &Vector) -> Vec<FieldElement> {
        let mut row = Vec::with_capacity(self.dimension());
        for (k, b) in self.blocks.iter().enumerate() {
            row.push(&b.scale * &v.0[2 * k + 1]);
            row.push(&b.scale * &v.0[2 * k]);
        }
        row
    }

    pub fn gram_matrix(&self) -> Vec<Vec<FieldElement>> {
        let n = self.dimension();
        (0..n)
            .map(|i| self.gram_row(&Vector::basis(self.desc, n, i)))
            .collect()
    }

    /// A vector `u` with `polar(u, v) = c` for each constraint `(v, c)`.
    /// Among all solutions the one whose free coordinates (after elimination)
    /// are zero is returned.
    pub fn solve_prescribed_pairings(
        &self,
        constraints: &[(Vector, FieldElement)],
    ) -> Result<Vector, QuadError> {
        let mut rows = Vec::with_capacity(constraints.len());
        let mut rhs = Vec::with_capacity(constraints.len());
        for (v, c) in constraints {
            self.check_dim(v)?;
            rows.push(self.gram_row(v));
            rhs.push(c.clone());
        }
        if rows.is_empty() {
            return Ok(Vector::zero(self.desc, self.dimension()));
        }
        linalg::solve_minimal(self.desc, rows, rhs, self.dimension())
            .map(Vector)
            .ok_or(QuadError::DependentConstraints)
    }

    /// A basis of the vectors orthogonal to every vector of `span`.
    pub fn orthogonal_complement(&self, span: &[Vector]) -> Result<Vec<Vector>, QuadError> {
        let n = self.dimension();
        if span.is_empty() {
            return Ok((0..n).map(|i| Vector::basis(self.desc, n, i)).collect());
        }
        let mut rows = Vec::with_capacity(span.len());
        for v in span {
            self.check_dim(v)?;
            rows.push(self.gram_row(v));
        }
        Ok(linalg::nullspace(self.desc, rows, n)
            .into_iter()
            .map(Vector)
            .collect())
    }

    /// The orthogonal transvection `x ↦ x + polar(u,x) N(u)^{-1} u`.
    pub fn transvection(&self, u: &Vector, x: &Vector) -> Result<Vector, QuadError> {
        let nu = self.evaluate(u)?;
        if nu.is_zero() {
            return Err(QuadError::SingularAxis);
        }
        let c = self.polar(u, x)?.try_div(&nu)?;
        Ok(x.add(&u.scale(&c)))
    }

    /// Look for a nonzero `v` with `N(v) = 0`.
    ///
    /// All coordinates but the first are drawn from `window`, projectively
    /// normalized so that the first nonzero one among them (in the order
    /// `v_2, ..., v_{n-1}, v_1`) is a monic unit of valuation zero. The first
    /// coordinate is then solved from the first block, which reduces to an
    /// Artin–Schreier equation decided exactly from its pole part, so every
    /// returned witness extends to a true zero of the form. Over a finite
    /// field this is a complete decision; over a Laurent field `None` only
    /// means that no witness was found in the window.
    pub fn isotropy_witness_search(&self, window: &Window) -> Result<Option<Vector>, QuadError> {
        let n = self.dimension();
        if n == 0 {
            return Ok(None);
        }
        let desc = self.desc;
        let head = &self.blocks[0];
        if head.alpha.is_zero() {
            return Ok(Some(Vector::basis(desc, n, 0)));
        }
        let all: Vec<FieldElement> = enumerate_elements(desc, window)?.collect();
        let units = window.normalized(desc);
        let tail_len = n - 2;
        let total: u128 = (0..=tail_len)
            .map(|p| {
                units.len() as u128 * (all.len() as u128).saturating_pow((tail_len - p) as u32)
            })
            .sum();
        window.check(total)?;

        let rel = desc.cap().saturating_add(32);
        let ab = &head.alpha * &head.beta;
        let s_alpha = &head.scale * &head.alpha;
        // kappa(Y) = alpha / (s Y^2), so that X = (Y/alpha) u with u^2 + u = ab + R kappa(Y)
        let prepare =
            |ys: &[FieldElement]| -> Result<Vec<Option<(FieldElement, FieldElement)>>, QuadError> {
                ys.iter()
                    .map(|y| {
                        if y.is_zero() {
                            return Ok(None);
                        }
                        let d = &head.scale * &y.square();
                        let kappa = head.alpha.mul_rel(&d.inv_rel(rel)?, rel);
                        Ok(Some((kappa, y.try_div(&head.alpha)?)))
                    })
                    .collect()
            };
        let all_prepared = prepare(&all)?;
        let unit_prepared = prepare(&units)?;

        for p in 0..=tail_len {
            let (ys, prepared) = if p == tail_len {
                (&units, &unit_prepared)
            } else {
                (&all, &all_prepared)
            };
            let free = tail_len.saturating_sub(p + 1);
            let mut odometer = vec![0usize; free];
            let leads: Vec<Option<&FieldElement>> = if p == tail_len {
                vec![None]
            } else {
                units.iter().map(Some).collect()
            };
            for lead in leads {
                odometer.iter_mut().for_each(|d| *d = 0);
                loop {
                    let mut tail = vec![desc.zero(); tail_len];
                    if let Some(u) = lead {
                        tail[p] = u.clone();
                        for (slot, &d) in tail[p + 1..].iter_mut().zip(&odometer) {
                            *slot = all[d].clone();
                        }
                    }
                    let r = self.blocks[1..]
                        .iter()
                        .enumerate()
                        .fold(desc.zero(), |acc, (k, b)| {
                            &acc + &b.value(&tail[2 * k], &tail[2 * k + 1])
                        });
                    for (y, prep) in ys.iter().zip(prepared) {
                        if let Some(x) = self.solve_head(&r, prep.as_ref(), &ab, &s_alpha)? {
                            let mut coords = vec![x, y.clone()];
                            coords.extend(tail.iter().cloned());
                            let v = Vector(coords);
                            if !v.is_zero() && self.evaluate(&v)?.is_zero() {
                                return Ok(Some(v));
                            }
                        }
                    }
                    if !advance(&mut odometer, all.len()) {
                        break;
                    }
                }
            }
        }
        Ok(None)
    }

    /// Solve `s(αX² + XY + βY²) = r` for `X`.
    fn solve_head(
        &self,
        r: &FieldElement,
        prep: Option<&(FieldElement, FieldElement)>,
        ab: &FieldElement,
        s_alpha: &FieldElement,
    ) -> Result<Option<FieldElement>, QuadError> {
        match prep {
            None => {
                if r.is_zero() {
                    return Ok(None);
                }
                Ok(r.try_div(s_alpha)?.sqrt())
            }
            Some((kappa, y_over_alpha)) => {
                let rel = self.desc.cap().saturating_add(32);
                let d = ab + &r.mul_rel(kappa, rel);
                match d.is_wp_image() {
                    Ok(true) => {}
                    Ok(false) | Err(FieldError::PrecisionLoss(_)) => return Ok(None),
                    Err(e) => return Err(e.into()),
                }
                Ok(d.artin_schreier_solve()?.root().map(|u| y_over_alpha * &u))
            }
        }
    }
}

/// Step a base-`radix` odometer; false once it wraps around.
fn advance(digits: &mut [usize], radix: usize) -> bool {
    for d in digits.iter_mut().rev() {
        *d += 1;
        if *d < radix {
            return true;
        }
        *d = 0;
    }
    false
}

impl fmt::Display for QuadraticForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, b) in self.blocks.iter().enumerate() {
            if k > 0 {
                f.write_str(" ⊥ ")?;
            }
            if !b.scale.is_one() {
                write!(f, "({})", b.scale)?;
            }
            write!(f, "[{}, {}]", b.alpha, b.beta)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f2t() -> FieldDescriptor {
        FieldDescriptor::laurent(1, 16).unwrap()
    }

    /// `[1,a] ⊥ b[1,a]`.
    fn as_form(a: &FieldElement, b: &FieldElement) -> QuadraticForm {
        let one = a.descriptor().one();
        let half = QuadraticForm::binary(one, a.clone());
        half.orthogonal_sum(&half.scaled(b).unwrap()).unwrap()
    }

    fn unit(d: FieldDescriptor, i: usize) -> Vector {
        Vector::basis(d, 4, i)
    }

    #[test]
    fn evaluate_on_basis_vectors() {
        let d = f2t();
        let (a, b) = (d.t().square(), d.t());
        let q = as_form(&a, &b);
        assert!(q.evaluate(&unit(d, 0)).unwrap().is_one());
        assert_eq!(q.evaluate(&unit(d, 1)).unwrap(), a);
        assert_eq!(q.evaluate(&unit(d, 2)).unwrap(), b);
        assert_eq!(q.evaluate(&unit(d, 3)).unwrap(), &a * &b);
    }

    #[test]
    fn polar_examples() {
        let d = f2t();
        let q = as_form(&d.one(), &d.t());
        assert!(q.polar(&unit(d, 0), &unit(d, 1)).unwrap().is_one());
        assert_eq!(q.polar(&unit(d, 2), &unit(d, 3)).unwrap(), d.t());
        let v = Vector(vec![d.one(), d.t(), d.t().square(), d.one()]);
        assert!(q.polar(&v, &v).unwrap().is_zero());
    }

    #[test]
    fn dimension_mismatch_is_reported() {
        let d = f2t();
        let q = as_form(&d.one(), &d.t());
        assert!(matches!(
            q.evaluate(&Vector::zero(d, 3)),
            Err(QuadError::DimensionMismatch {
                expected: 4,
                found: 3
            })
        ));
    }

    #[test]
    fn prescribed_pairings_example() {
        let d = f2t();
        let q = as_form(&d.one(), &d.t());
        let (e, j) = (unit(d, 0), unit(d, 2));
        let u = q
            .solve_prescribed_pairings(&[(e.clone(), d.zero()), (j.clone(), d.one())])
            .unwrap();
        assert_eq!(u, unit(d, 3).scale(&d.t().inv().unwrap()));
        assert!(q.polar(&u, &e).unwrap().is_zero());
        assert!(q.polar(&u, &j).unwrap().is_one());

        assert_eq!(
            q.solve_prescribed_pairings(&[]).unwrap(),
            Vector::zero(d, 4)
        );
        assert_eq!(
            q.solve_prescribed_pairings(&[(e.clone(), d.zero()), (e, d.one())]),
            Err(QuadError::DependentConstraints)
        );
    }

    #[test]
    fn complement_examples() {
        let d = f2t();
        let q = as_form(&d.one(), &d.t());
        let e = unit(d, 0);
        let i = unit(d, 1);
        let c = q.orthogonal_complement(std::slice::from_ref(&e)).unwrap();
        assert_eq!(c, vec![e.clone(), unit(d, 2), unit(d, 3)]);
        let c = q
            .orthogonal_complement(&[e.clone(), i.clone(), i.add(&e.scale(&d.t()))])
            .unwrap();
        assert_eq!(c, vec![unit(d, 2), unit(d, 3)]);
        assert_eq!(q.orthogonal_complement(&[]).unwrap().len(), 4);
    }

    #[test]
    fn transvection_examples() {
        let d = f2t();
        let q = as_form(&d.one(), &d.t());
        let u = unit(d, 0).add(&unit(d, 2));
        let x = unit(d, 3);
        let y = q.transvection(&u, &x).unwrap();
        assert_eq!(q.evaluate(&y).unwrap(), q.evaluate(&x).unwrap());
        assert_eq!(q.transvection(&u, &u).unwrap(), u);
        assert_eq!(q.transvection(&u, &unit(d, 0)).unwrap(), unit(d, 0));
        assert_eq!(
            q.transvection(&Vector::zero(d, 4), &x),
            Err(QuadError::SingularAxis)
        );
    }

    #[test]
    fn nonsplit_form_has_no_window_witness() {
        let d = f2t();
        let q = as_form(&d.one(), &d.t());
        let found = q.isotropy_witness_search(&Window::new(0, 2, 4)).unwrap();
        assert!(found.is_none());
        assert!(q
            .isotropy_witness_search(&Window::standard())
            .unwrap()
            .is_none());
    }

    #[test]
    fn finite_forms_are_isotropic() {
        let d = FieldDescriptor::finite(2).unwrap();
        let q = as_form(&d.one(), &d.one());
        let v = q
            .isotropy_witness_search(&Window::standard())
            .unwrap()
            .unwrap();
        assert!(!v.is_zero());
        assert!(q.evaluate(&v).unwrap().is_zero());
    }

    #[test]
    fn split_laurent_form_has_witness() {
        let d = f2t();
        // [t, t) splits: t is a norm from the ℘-extension of t
        let q = as_form(&d.t(), &d.t());
        let v = q
            .isotropy_witness_search(&Window::standard())
            .unwrap()
            .unwrap();
        assert!(q.evaluate(&v).unwrap().is_zero());
    }
}
