//! Norm forms of presentations and the isotropy search on them.

use char2q::fields::{FieldDescriptor, Window};
use char2q::oracle::brute_force_isotropy;
use char2q::quaternion::Presentation;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let f: FieldDescriptor = "laurent(gf(2),prec=16)".parse()?;
    let window = Window::new(-1, 1, 2);
    for (a, b) in [("1", "t"), ("t", "t"), ("t^-1", "t")] {
        let p = Presentation::artin_schreier(f.parse(a)?, f.parse(b)?)?;
        let nf = p.norm_form();
        print!("{p}: N = {}", nf.form);
        match nf.form.isotropy_witness_search(&window)? {
            Some(v) => {
                let x = nf.from_form_coords(&p, &v)?;
                println!("\n  isotropic: x = {x}, N(x) = {}", x.norm());
            }
            None => println!("\n  no norm-zero vector in the window"),
        }
    }

    let f4: FieldDescriptor = "gf(4)".parse()?;
    let p = Presentation::artin_schreier(f4.generator(), f4.one())?;
    let v = brute_force_isotropy(&p.norm_form().form, &Window::standard())?;
    println!(
        "{p} over {f4}: first isotropic vector {:?}",
        v.map(|v| v.to_string())
    );
    Ok(())
}
