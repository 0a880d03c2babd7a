//! Brute-force checkers used to validate the analytic machinery.

use crate::fields::{enumerate_elements, FieldDescriptor, FieldElement, Window};
use crate::quadspace::{QuadError, QuadraticForm, Vector};
use crate::quaternion::{embed_presentation, Kind, Presentation, QuatError};
use crate::slots::{SlotError, SlotInstance, Theorem};
use crate::symbols::{symbol_invariant, SymbolError};

/// First nonzero vector with `N(v) = 0` among all vectors whose coordinates
/// lie in `window`, in odometer order (last coordinate fastest). Over a finite
/// field this scans the whole space.
pub fn brute_force_isotropy(
    form: &QuadraticForm,
    window: &Window,
) -> Result<Option<Vector>, QuadError> {
    let n = form.dimension();
    let desc = form.descriptor();
    let elements: Vec<FieldElement> = enumerate_elements(desc, window)?.collect();
    window.check((elements.len() as u128).saturating_pow(n as u32))?;
    if n == 0 || elements.len() < 2 {
        return Ok(None);
    }
    let mut digits = vec![0usize; n];
    while step(&mut digits, elements.len()) {
        let v = Vector(digits.iter().map(|&d| elements[d].clone()).collect());
        if form.evaluate(&v)?.is_zero() {
            return Ok(Some(v));
        }
    }
    Ok(None)
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

/// Every slot value in `window` for which both common-slot presentations
/// embed in the ambient algebra (embeddings searched in the same window).
pub fn brute_force_slot(
    inst: &SlotInstance,
    theorem: Theorem,
    window: &Window,
) -> Result<Vec<FieldElement>, SlotError> {
    let desc = inst.ambient().descriptor();
    let mut found = Vec::new();
    'candidates: for s in enumerate_elements(desc, window)? {
        for original in inst.targets() {
            let target = match theorem.with_slot(original, &s) {
                Ok(t) => t,
                Err(QuatError::InvalidPresentation(_)) => continue 'candidates,
                Err(err) => return Err(err.into()),
            };
            match embed_presentation(inst.ambient(), &target, window) {
                Ok(_) => {}
                Err(QuatError::SearchExhausted) => continue 'candidates,
                Err(err) => return Err(err.into()),
            }
        }
        found.push(s);
    }
    Ok(found)
}

/// A set of `(a, b)` pairs and the window for the isotropy search.
#[derive(Clone, Debug)]
pub struct Grid {
    pub descriptor: FieldDescriptor,
    pub points: Vec<(FieldElement, FieldElement)>,
    pub search: Window,
}

impl Grid {
    /// All `(a, b)` with `a, b` in `window` and `b != 0`; the same window
    /// drives the search.
    pub fn from_window(desc: FieldDescriptor, window: &Window) -> Result<Self, QuadError> {
        let elements: Vec<FieldElement> = enumerate_elements(desc, window)?.collect();
        let mut points = Vec::new();
        for a in &elements {
            for b in elements.iter().filter(|b| !b.is_zero()) {
                points.push((a.clone(), b.clone()));
            }
        }
        Ok(Grid {
            descriptor: desc,
            points,
            search: *window,
        })
    }

    /// Valuations in [-2, 2], coefficient degree at most 3 (exhaustive on
    /// finite fields).
    pub fn standard(desc: FieldDescriptor) -> Result<Self, QuadError> {
        Grid::from_window(desc, &Window::standard())
    }
}

/// A grid point where the invariant and the search disagree.
#[derive(Clone, Debug, PartialEq)]
pub struct Violation {
    pub a: FieldElement,
    pub b: FieldElement,
    pub invariant: u8,
    pub witness: Option<Vector>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct CrossValidation {
    pub descriptor: FieldDescriptor,
    pub points: usize,
    pub split: usize,
    pub nonsplit: usize,
    pub violations: Vec<Violation>,
}

impl CrossValidation {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

#[derive(Debug, thiserror::Error)]
pub enum OracleError {
    #[error(transparent)]
    Quad(#[from] QuadError),
    #[error(transparent)]
    Symbol(#[from] SymbolError),
    #[error(transparent)]
    Quat(#[from] QuatError),
}

/// For each grid point compare the class invariant of `[a,b)` with the
/// isotropy search on its norm form: invariant 0 must come with a witness,
/// invariant 1 must not.
pub fn cross_validate_invariant(grid: &Grid) -> Result<CrossValidation, OracleError> {
    let mut out = CrossValidation {
        descriptor: grid.descriptor,
        points: grid.points.len(),
        split: 0,
        nonsplit: 0,
        violations: Vec::new(),
    };
    for (a, b) in &grid.points {
        let invariant = symbol_invariant(Kind::As, a, b)?;
        let p = Presentation::artin_schreier(a.clone(), b.clone())?;
        let witness = p.norm_form().form.isotropy_witness_search(&grid.search)?;
        if invariant == 0 {
            out.split += 1;
        } else {
            out.nonsplit += 1;
        }
        if (invariant == 0) != witness.is_some() {
            out.violations.push(Violation {
                a: a.clone(),
                b: b.clone(),
                invariant,
                witness,
            });
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::sync::Arc;

    use crate::quaternion::Realization;

    fn gf(k: u8) -> FieldDescriptor {
        FieldDescriptor::finite(k).unwrap()
    }

    #[test]
    fn finite_norm_forms_are_isotropic() {
        let d = gf(2);
        let all: Vec<_> = enumerate_elements(d, &Window::standard())
            .unwrap()
            .collect();
        for a in &all {
            for b in all.iter().filter(|b| !b.is_zero()) {
                let p = Presentation::artin_schreier(a.clone(), b.clone()).unwrap();
                let form = p.norm_form().form;
                let v = brute_force_isotropy(&form, &Window::standard())
                    .unwrap()
                    .unwrap();
                assert!(form.evaluate(&v).unwrap().is_zero());
            }
        }
    }

    #[test]
    fn nonsplit_laurent_form_has_no_small_witness() {
        let d = FieldDescriptor::laurent(1, 16).unwrap();
        let p = Presentation::artin_schreier(d.one(), d.t()).unwrap();
        let form = p.norm_form().form;
        assert!(brute_force_isotropy(&form, &Window::new(-1, 1, 2))
            .unwrap()
            .is_none());
        assert!(brute_force_isotropy(&form, &Window::empty())
            .unwrap()
            .is_none());
    }

    #[test]
    fn singleton_grid() {
        let d = FieldDescriptor::laurent(1, 16).unwrap();
        let grid = Grid {
            descriptor: d,
            points: vec![(d.one(), d.t())],
            search: Window::standard(),
        };
        let cv = cross_validate_invariant(&grid).unwrap();
        assert_eq!((cv.split, cv.nonsplit), (0, 1));
        assert!(cv.passed());
    }

    #[test]
    fn finite_grids_split_everywhere() {
        for k in [2, 3] {
            let cv = cross_validate_invariant(&Grid::standard(gf(k)).unwrap()).unwrap();
            assert_eq!(cv.nonsplit, 0);
            assert!(cv.passed());
        }
    }

    #[test]
    fn split_slot_values_are_found() {
        let d = gf(2);
        let p = Presentation::artin_schreier(d.one(), d.one()).unwrap();
        let inst = SlotInstance::new(
            Arc::clone(&p),
            Realization::defining(&p),
            Realization::defining(&p),
        )
        .unwrap();
        let slots = brute_force_slot(&inst, Theorem::CommonB, &Window::standard()).unwrap();
        assert!(slots.iter().any(FieldElement::is_one));
        let slots = brute_force_slot(&inst, Theorem::CommonA, &Window::standard()).unwrap();
        assert!(slots.iter().any(FieldElement::is_zero));
    }
}
