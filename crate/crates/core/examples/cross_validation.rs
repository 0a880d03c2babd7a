//! Compare the residue invariant with an independent isotropy search.

use char2q::fields::{FieldDescriptor, Window};
use char2q::oracle::{cross_validate_invariant, Grid};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for (field, window) in [
        ("gf(4)", Window::standard()),
        ("laurent(gf(2),prec=16)", Window::new(-1, 1, 2)),
    ] {
        let desc: FieldDescriptor = field.parse()?;
        let cv = cross_validate_invariant(&Grid::from_window(desc, &window)?)?;
        println!(
            "{desc}: {} points, {} split, {} division, {} disagreements",
            cv.points,
            cv.split,
            cv.nonsplit,
            cv.violations.len()
        );
    }
    Ok(())
}
