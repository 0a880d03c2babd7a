//! Common slots for two presentations of one quaternion algebra.
//!
//! Given witnesses realizing two presentations inside one ambient algebra,
//! produce a common second slot `b` (both `[a_i,b)`), a common first slot `a`
//! (both `[a,b_i)`), or a common first slot for the bilinear symbols (both
//! `((a,b_i))`), together with generators realizing the new presentations.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use rand::Rng;
use thiserror::Error;

use crate::fields::{FieldDescriptor, FieldElement, FieldError, Window};
use crate::linalg;
use crate::quadspace::{QuadError, Vector};
use crate::quaternion::{
    check_relations, embed_presentation, sample_presentation, Kind, Presentation, QuatError,
    QuaternionElement, Realization, SampleOptions,
};
use crate::symbols::{class_equal, presentation_value, SymbolError};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SlotError {
    #[error("invalid slot instance: {0}")]
    InvalidInstance(String),
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("the ambient algebra splits (an element of norm zero was met)")]
    SplitAmbient,
    #[error("anisotropy violated: {0}")]
    AnisotropyViolated(String),
    #[error(transparent)]
    Quat(#[from] QuatError),
    #[error(transparent)]
    Quad(#[from] QuadError),
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Symbol(#[from] SymbolError),
}

/// Which common slot is sought.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Theorem {
    /// `[a_1,b) = [a_2,b)`.
    CommonB,
    /// `[a,b_1) = [a,b_2)`.
    CommonA,
    /// `((a,b_1)) = ((a,b_2))`.
    CommonABil,
}

impl Theorem {
    pub const ALL: [Theorem; 3] = [Theorem::CommonB, Theorem::CommonA, Theorem::CommonABil];

    /// Kind of both input and output presentations.
    pub fn kind(self) -> Kind {
        match self {
            Theorem::CommonB | Theorem::CommonA => Kind::As,
            Theorem::CommonABil => Kind::Bil,
        }
    }

    /// The slot value used when the ambient algebra splits.
    pub fn split_value(self, desc: FieldDescriptor) -> FieldElement {
        match self {
            Theorem::CommonB => desc.one(),
            Theorem::CommonA | Theorem::CommonABil => desc.zero(),
        }
    }

    /// The presentation obtained by putting `slot` into `original`.
    pub fn with_slot(
        self,
        original: &Presentation,
        slot: &FieldElement,
    ) -> Result<Arc<Presentation>, QuatError> {
        match self {
            Theorem::CommonB => Presentation::new(Kind::As, original.a().clone(), slot.clone()),
            Theorem::CommonA => Presentation::new(Kind::As, slot.clone(), original.b().clone()),
            Theorem::CommonABil => Presentation::new(Kind::Bil, slot.clone(), original.b().clone()),
        }
    }
}

impl fmt::Display for Theorem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Theorem::CommonB => "common-b",
            Theorem::CommonA => "common-a",
            Theorem::CommonABil => "common-a-bil",
        })
    }
}

impl FromStr for Theorem {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "common-b" | "i" => Ok(Theorem::CommonB),
            "common-a" | "ii" => Ok(Theorem::CommonA),
            "common-a-bil" | "iii" => Ok(Theorem::CommonABil),
            other => Err(format!("unknown theorem {other:?}")),
        }
    }
}

/// Two presentations realized inside one ambient algebra.
#[derive(Clone, Debug)]
pub struct SlotInstance {
    ambient: Arc<Presentation>,
    first: Realization,
    second: Realization,
}

impl SlotInstance {
    /// Validates that both witness pairs live in `ambient` and satisfy the
    /// relations of their presentations.
    pub fn new(
        ambient: Arc<Presentation>,
        first: Realization,
        second: Realization,
    ) -> Result<Self, SlotError> {
        let e = ambient.e();
        for (n, r) in [&first, &second].into_iter().enumerate() {
            if e.try_add(&r.x).is_err() || e.try_add(&r.y).is_err() {
                return Err(SlotError::InvalidInstance(format!(
                    "witnesses {} are not in the ambient",
                    n + 1
                )));
            }
            if !r.check()?.holds() {
                return Err(SlotError::InvalidInstance(format!(
                    "witnesses {} do not realize {}",
                    n + 1,
                    r.presentation
                )));
            }
        }
        Ok(SlotInstance {
            ambient,
            first,
            second,
        })
    }

    pub fn ambient(&self) -> &Arc<Presentation> {
        &self.ambient
    }

    pub fn first(&self) -> &Realization {
        &self.first
    }

    pub fn second(&self) -> &Realization {
        &self.second
    }

    pub fn targets(&self) -> [&Arc<Presentation>; 2] {
        [&self.first.presentation, &self.second.presentation]
    }

    fn require_kind(&self, theorem: Theorem) -> Result<(), SlotError> {
        for p in self.targets() {
            if p.kind() != theorem.kind() {
                return Err(SlotError::InvalidInstance(format!(
                    "{theorem} needs {} presentations, got {p}",
                    theorem.kind()
                )));
            }
        }
        Ok(())
    }
}

/// One named pass/fail entry of a verification report.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub passed: bool,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct VerificationReport {
    pub checks: Vec<Check>,
}

impl VerificationReport {
    fn push(&mut self, name: impl Into<String>, passed: bool) {
        self.checks.push(Check {
            name: name.into(),
            passed,
        });
    }

    pub fn all_pass(&self) -> bool {
        !self.checks.is_empty() && self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

/// Generators realizing one common-slot presentation.
#[derive(Clone, Debug, PartialEq)]
pub struct Witness {
    pub x: QuaternionElement,
    pub y: QuaternionElement,
}

#[derive(Clone, Debug)]
pub struct SlotResult {
    pub theorem: Theorem,
    pub ambient: Arc<Presentation>,
    /// The instance's presentations; the other slot of each is kept.
    pub originals: [Arc<Presentation>; 2],
    pub slot: FieldElement,
    /// One pair per original; empty when a split ambient admitted no
    /// embedding inside the search window.
    pub witnesses: Vec<Witness>,
    pub degenerate: bool,
    /// Whether the non-orthogonality repair applied a transvection.
    pub transvected: bool,
    pub report: VerificationReport,
}

impl SlotResult {
    /// The two common-slot presentations.
    pub fn presentations(&self) -> Result<[Arc<Presentation>; 2], QuatError> {
        Ok([
            self.theorem.with_slot(&self.originals[0], &self.slot)?,
            self.theorem.with_slot(&self.originals[1], &self.slot)?,
        ])
    }
}

/// Output of [`ensure_nonorthogonal`].
#[derive(Clone, Debug)]
pub struct Nonorthogonal {
    pub y1: QuaternionElement,
    pub y2: QuaternionElement,
    pub transvected: bool,
}

/// Replace `y2` by an element of the same norm, still orthogonal to `e`,
/// that is not orthogonal to `y1`. Requires `y_i ⊥ e`, `y_i ∉ F·e` and
/// `N(y_i) != 0`.
pub fn ensure_nonorthogonal(
    ambient: &Arc<Presentation>,
    y1: &QuaternionElement,
    y2: &QuaternionElement,
) -> Result<Nonorthogonal, SlotError> {
    let (orthogonal, us) = repair_vectors(ambient, y1, y2)?;
    if orthogonal {
        transvect(ambient, y1, y2, &us[0])
    } else {
        Ok(Nonorthogonal {
            y1: y1.clone(),
            y2: y2.clone(),
            transvected: false,
        })
    }
}

/// Whether `y1 ⊥ y2`, and vectors `u` with `u ⊥ e`, `polar(u, y1) = 1`
/// (and `polar(u, y2) = 1` when `e, y1, y2` are independent) and
/// `N(u) != 0`: the minimal solution first, then (over Laurent fields) shifts
/// of it by `c t^m` times each solution of the homogeneous system. The list
/// is empty for a non-orthogonal pair over a finite field.
fn repair_vectors(
    ambient: &Arc<Presentation>,
    y1: &QuaternionElement,
    y2: &QuaternionElement,
) -> Result<(bool, Vec<Vector>), SlotError> {
    let e = ambient.e();
    for (n, y) in [y1, y2].into_iter().enumerate() {
        if !e.try_polar(y)?.is_zero() {
            return Err(SlotError::PreconditionViolated(format!(
                "y{} is not orthogonal to e",
                n + 1
            )));
        }
        if y.is_scalar() {
            return Err(SlotError::PreconditionViolated(format!(
                "y{} lies in F·e",
                n + 1
            )));
        }
        if y.norm().is_zero() {
            return Err(SlotError::SplitAmbient);
        }
    }
    let orthogonal = y1.try_polar(y2)?.is_zero();
    if !orthogonal && ambient.descriptor().is_finite() {
        return Ok((false, Vec::new()));
    }
    match candidate_vectors(ambient, y1, y2) {
        Ok(us) => Ok((orthogonal, us)),
        Err(err) if orthogonal => Err(err),
        Err(_) => Ok((false, Vec::new())),
    }
}

fn candidate_vectors(
    ambient: &Arc<Presentation>,
    y1: &QuaternionElement,
    y2: &QuaternionElement,
) -> Result<Vec<Vector>, SlotError> {
    let e = ambient.e();
    let desc = ambient.descriptor();
    let nf = ambient.norm_form();
    let q = &nf.form;
    let (ev, v1, v2) = (
        nf.to_form_coords(&e),
        nf.to_form_coords(y1),
        nf.to_form_coords(y2),
    );
    let dependent = linalg::rank(&[ev.0.clone(), v1.0.clone(), v2.0.clone()]) < 3;
    let mut constraints = vec![(ev.clone(), desc.zero()), (v1.clone(), desc.one())];
    let mut rows = vec![ev.clone(), v1];
    if !dependent {
        constraints.push((v2.clone(), desc.one()));
        rows.push(v2);
    }
    let base = q.solve_prescribed_pairings(&constraints)?;
    let mut candidates = vec![base.clone()];
    if !desc.is_finite() {
        // every combination of 0 or t^m (|m| <= 4) per homogeneous solution,
        // cheapest first
        let homogeneous = q.orthogonal_complement(&rows)?;
        let q_size = desc.coefficients().size() as u16;
        let steps: Vec<Option<(u16, i64)>> = std::iter::once(None)
            .chain(
                (1..=MAX_SHIFT)
                    .flat_map(|m| [m, -m])
                    .flat_map(|m| (1..q_size).map(move |c| Some((c, m)))),
            )
            .collect();
        let mut combos: Vec<Vec<Option<(u16, i64)>>> = vec![Vec::new()];
        for _ in &homogeneous {
            combos = combos
                .into_iter()
                .flat_map(|c| steps.iter().map(move |&s| [c.clone(), vec![s]].concat()))
                .collect();
        }
        let cost =
            |c: &Vec<Option<(u16, i64)>>| c.iter().flatten().map(|(_, m)| m.abs() + 1).sum::<i64>();
        combos.retain(|c| cost(c) > 0);
        combos.sort_by_key(cost);
        for combo in combos {
            let mut u = base.clone();
            for (h, m) in homogeneous.iter().zip(combo) {
                if let Some((c, m)) = m {
                    u = u.add(&h.scale(&desc.monomial(c, m)));
                }
            }
            candidates.push(u);
        }
    }
    for u in &mut candidates {
        if q.evaluate(u)?.is_zero() {
            *u = u.add(&ev);
        }
    }
    Ok(candidates)
}

/// Apply the transvection along `u` to `y2` and check the postconditions.
fn transvect(
    ambient: &Arc<Presentation>,
    y1: &QuaternionElement,
    y2: &QuaternionElement,
    u: &Vector,
) -> Result<Nonorthogonal, SlotError> {
    let e = ambient.e();
    let nf = ambient.norm_form();
    let y2_new = nf.from_form_coords(ambient, &nf.form.transvection(u, &nf.to_form_coords(y2))?)?;
    let ok = y2_new.norm() == y2.norm()
        && e.try_polar(&y2_new)?.is_zero()
        && !y1.try_polar(&y2_new)?.is_zero();
    if !ok {
        return Err(SlotError::PreconditionViolated(
            "transvection did not produce a non-orthogonal pair".into(),
        ));
    }
    Ok(Nonorthogonal {
        y1: y1.clone(),
        y2: y2_new,
        transvected: true,
    })
}

/// Whether the ambient algebra splits, by its class invariant.
pub fn ambient_splits(ambient: &Presentation) -> Result<bool, SlotError> {
    Ok(presentation_value(ambient)?.is_split())
}

const MAX_SHIFT: i64 = 6;

/// Window used to find witnesses for the split-case presentations.
fn degenerate_window(desc: FieldDescriptor) -> Window {
    if desc.is_finite() {
        Window::standard()
    } else {
        Window::new(-1, 1, 2)
    }
}

fn degenerate_result(theorem: Theorem, inst: &SlotInstance) -> Result<SlotResult, SlotError> {
    let desc = inst.ambient.descriptor();
    let slot = theorem.split_value(desc);
    let window = degenerate_window(desc);
    let mut witnesses = Vec::new();
    for original in inst.targets() {
        let target = theorem.with_slot(original, &slot)?;
        match embed_presentation(&inst.ambient, &target, &window) {
            Ok((x, y)) => witnesses.push(Witness { x, y }),
            Err(QuatError::SearchExhausted) => {
                witnesses.clear();
                break;
            }
            Err(err) => return Err(err.into()),
        }
    }
    finish(theorem, inst, slot, witnesses, true, false)
}

fn finish(
    theorem: Theorem,
    inst: &SlotInstance,
    slot: FieldElement,
    witnesses: Vec<Witness>,
    degenerate: bool,
    transvected: bool,
) -> Result<SlotResult, SlotError> {
    let mut result = SlotResult {
        theorem,
        ambient: Arc::clone(&inst.ambient),
        originals: [
            Arc::clone(&inst.first.presentation),
            Arc::clone(&inst.second.presentation),
        ],
        slot,
        witnesses,
        degenerate,
        transvected,
        report: VerificationReport::default(),
    };
    result.report = verify_slot_result(&result);
    Ok(result)
}

/// A common second slot: `[a_1,b) = [a_2,b)`. For a nonsplit ambient, `y`
/// is the first basis vector of `⟨e, x_1, x_2⟩^⊥` and `b = N(y)`.
pub fn common_second_slot(inst: &SlotInstance) -> Result<SlotResult, SlotError> {
    let theorem = Theorem::CommonB;
    inst.require_kind(theorem)?;
    if ambient_splits(&inst.ambient)? {
        return degenerate_result(theorem, inst);
    }
    let nf = inst.ambient.norm_form();
    let span = [
        nf.to_form_coords(&inst.ambient.e()),
        nf.to_form_coords(&inst.first.x),
        nf.to_form_coords(&inst.second.x),
    ];
    let complement = nf.form.orthogonal_complement(&span)?;
    let y = nf.from_form_coords(&inst.ambient, &complement[0])?;
    // the norm is b itself: -b = b in characteristic 2
    let b = y.norm();
    if b.is_zero() {
        return Err(SlotError::AnisotropyViolated(
            "complement vector of norm zero".into(),
        ));
    }
    let witnesses = vec![
        Witness {
            x: inst.first.x.clone(),
            y: y.clone(),
        },
        Witness {
            x: inst.second.x.clone(),
            y,
        },
    ];
    finish(theorem, inst, b, witnesses, false, false)
}

/// A common first slot for two `[a_i,b_i)`: after making `y_1, y_2`
/// non-orthogonal, solve `polar(x,e) = 1`, `polar(x,y_i) = 0` and take
/// `a = N(x)`.
pub fn common_first_slot_as(inst: &SlotInstance) -> Result<SlotResult, SlotError> {
    common_first_slot(inst, Theorem::CommonA)
}

/// A common first slot for two `((a_i,b_i))`: after making `y_1, y_2`
/// non-orthogonal, solve `polar(x,e) = 0`, `polar(x,y_i) = 1` and take
/// `a = N(x)`.
pub fn common_first_slot_bil(inst: &SlotInstance) -> Result<SlotResult, SlotError> {
    common_first_slot(inst, Theorem::CommonABil)
}

fn common_first_slot(inst: &SlotInstance, theorem: Theorem) -> Result<SlotResult, SlotError> {
    inst.require_kind(theorem)?;
    if ambient_splits(&inst.ambient)? {
        return degenerate_result(theorem, inst);
    }
    let ambient = &inst.ambient;
    let (y1, y2) = (&inst.first.y, &inst.second.y);
    let (orthogonal, candidates) = repair_vectors(ambient, y1, y2)?;
    // The transvection is not unique, and a non-orthogonal pair may be
    // transvected too. Over a Laurent field the slot of one choice may need
    // more digits than the precision carries to certify its class, so other
    // choices (transvecting y2, then y1) are tried until one verifies.
    let swapped = match ambient.descriptor().is_finite() {
        true => Vec::new(),
        false => repair_vectors(ambient, y2, y1)
            .map(|r| r.1)
            .unwrap_or_default(),
    };
    let attempts = (!orthogonal)
        .then_some((false, None))
        .into_iter()
        .chain(candidates.iter().map(|u| (false, Some(u))))
        .chain(swapped.iter().map(|u| (true, Some(u))));
    let mut fallback = None;
    for (n, (swap, u)) in attempts.enumerate() {
        let fixed = if let Some(u) = u.filter(|_| swap) {
            transvect(ambient, y2, y1, u).map(|f| Nonorthogonal {
                y1: f.y2,
                y2: f.y1,
                transvected: true,
            })
        } else if let Some(u) = u {
            transvect(ambient, y1, y2, u)
        } else {
            Ok(Nonorthogonal {
                y1: y1.clone(),
                y2: y2.clone(),
                transvected: false,
            })
        };
        let result = match fixed.and_then(|fixed| first_slot_from(inst, theorem, fixed)) {
            Ok(r) => r,
            Err(err) if n == 0 => return Err(err),
            Err(_) => continue,
        };
        if result.report.all_pass() {
            return Ok(result);
        }
        fallback.get_or_insert(result);
    }
    Ok(fallback.expect("the first candidate either returns or is kept"))
}

fn first_slot_from(
    inst: &SlotInstance,
    theorem: Theorem,
    fixed: Nonorthogonal,
) -> Result<SlotResult, SlotError> {
    let ambient = &inst.ambient;
    let desc = ambient.descriptor();
    let nf = ambient.norm_form();
    let (on_e, on_y) = match theorem {
        Theorem::CommonA => (desc.one(), desc.zero()),
        _ => (desc.zero(), desc.one()),
    };
    let constraints = [
        (nf.to_form_coords(&ambient.e()), on_e),
        (nf.to_form_coords(&fixed.y1), on_y.clone()),
        (nf.to_form_coords(&fixed.y2), on_y),
    ];
    let x = nf.from_form_coords(ambient, &nf.form.solve_prescribed_pairings(&constraints)?)?;
    let a = x.norm();
    if theorem == Theorem::CommonABil && a.is_zero() {
        return Err(SlotError::AnisotropyViolated(
            "solved x has norm zero".into(),
        ));
    }
    let witnesses = vec![
        Witness {
            x: x.clone(),
            y: fixed.y1,
        },
        Witness { x, y: fixed.y2 },
    ];
    finish(theorem, inst, a, witnesses, false, fixed.transvected)
}

/// Run the operation for `theorem`.
pub fn common_slot(theorem: Theorem, inst: &SlotInstance) -> Result<SlotResult, SlotError> {
    match theorem {
        Theorem::CommonB => common_second_slot(inst),
        Theorem::CommonA => common_first_slot_as(inst),
        Theorem::CommonABil => common_first_slot_bil(inst),
    }
}

/// Re-derive every claim of a result from its slot value, witnesses and
/// ambient: the common-slot presentations are rebuilt from `slot`, their
/// relations checked on the witnesses, and classes compared.
pub fn verify_slot_result(r: &SlotResult) -> VerificationReport {
    let mut report = VerificationReport::default();
    let ambient_value = match presentation_value(&r.ambient) {
        Ok(v) => Some(v),
        Err(_) => {
            report.push("ambient_invariant", false);
            None
        }
    };
    let desc = r.ambient.descriptor();
    let targets = match r.presentations() {
        Ok(t) => Some(t),
        Err(_) => {
            report.push("slot_admissible", false);
            None
        }
    };
    let split = ambient_value.as_ref().map(|v| v.is_split());
    if r.degenerate {
        report.push("ambient_splits", split == Some(true));
        report.push("split_slot_value", r.slot == r.theorem.split_value(desc));
        if desc.is_finite() {
            let form = r.ambient.norm_form().form;
            let isotropic = matches!(
                form.isotropy_witness_search(&Window::standard()),
                Ok(Some(_))
            );
            report.push("ambient_isotropic", isotropic);
        }
    } else {
        report.push("ambient_nonsplit", split == Some(false));
        report.push("witness_count", r.witnesses.len() == 2);
    }
    let Some(targets) = targets else {
        return report;
    };
    for (n, (target, w)) in targets.iter().zip(&r.witnesses).enumerate() {
        let tag = n + 1;
        match check_relations(target, &w.x, &w.y) {
            Ok(rel) => {
                report.push(
                    format!("target{tag}_relations"),
                    rel.first && rel.second && rel.cross,
                );
                report.push(format!("target{tag}_dimension"), rel.dimension == 4);
            }
            Err(_) => report.push(format!("target{tag}_relations"), false),
        }
        let same_class = match (presentation_value(target), &ambient_value) {
            (Ok(v), Some(amb)) => class_equal(&v, amb).unwrap_or(false),
            _ => false,
        };
        report.push(format!("target{tag}_class"), same_class);
        if r.theorem == Theorem::CommonABil && !r.degenerate {
            // the product route: (x y_i, y_i) realizes [a b_i, b_i)
            let xy = &w.x * &w.y;
            let ab = &r.slot * target.b();
            report.push(format!("target{tag}_product_norm"), xy.norm() == ab);
            let route = Presentation::artin_schreier(ab, target.b().clone())
                .ok()
                .and_then(|p| {
                    let rel = check_relations(&p, &xy, &w.y).ok()?;
                    let v = presentation_value(&p).ok()?;
                    let bil = presentation_value(target).ok()?;
                    Some(rel.holds() && class_equal(&v, &bil).ok()?)
                });
            report.push(format!("target{tag}_as_route"), route == Some(true));
        }
    }
    report
}

/// A random equal-class instance: two presentations of `kind` sampled inside
/// `ambient`. With `orthogonal`, the second `y` is forced orthogonal to the
/// first so that the non-orthogonality repair has work to do.
pub fn sample_instance<R: Rng + ?Sized>(
    ambient: &Arc<Presentation>,
    kind: Kind,
    orthogonal: bool,
    options: &SampleOptions,
    rng: &mut R,
) -> Result<SlotInstance, SlotError> {
    let first = sample_presentation(ambient, kind, options, rng)?;
    let second_opts = SampleOptions {
        orthogonal_to: orthogonal.then(|| first.y.clone()),
        ..options.clone()
    };
    let second = sample_presentation(ambient, kind, &second_opts, rng)?;
    SlotInstance::new(Arc::clone(ambient), first, second)
}
