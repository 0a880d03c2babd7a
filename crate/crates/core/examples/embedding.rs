//! Realize one presentation inside another algebra of the same class.

use char2q::fields::{FieldDescriptor, Window};
use char2q::quaternion::{embed_presentation, Presentation, Realization};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let f: FieldDescriptor = "laurent(gf(2),prec=16)".parse()?;
    let ambient = Presentation::artin_schreier(f.one(), f.t())?;
    let target = Presentation::artin_schreier(f.parse("1+t+t^2")?, f.t())?;
    let (x, y) = embed_presentation(&ambient, &target, &Window::new(-1, 1, 2))?;
    println!("inside {ambient}:");
    println!("  x = {x}\n  y = {y}");
    let r = Realization {
        presentation: target,
        x,
        y,
    };
    let report = r.check()?;
    println!("relations of {} hold: {}", r.presentation, report.holds());
    Ok(())
}
