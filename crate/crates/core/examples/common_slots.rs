//! The three common-slot procedures inside [1, t) over F2((t)).

use std::sync::Arc;

use char2q::fields::FieldDescriptor;
use char2q::quaternion::{Kind, Presentation, Realization, SampleOptions};
use char2q::slots::{common_slot, sample_instance, SlotInstance, Theorem};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let f: FieldDescriptor = "laurent(gf(2),prec=16)".parse()?;
    let t = f.t();
    let p = Presentation::artin_schreier(f.one(), t.clone())?;
    let second = Realization {
        presentation: Presentation::artin_schreier(f.parse("1+t+t^2")?, t.clone())?,
        x: &p.i() + &p.scalar(t),
        y: p.j(),
    };
    let inst = SlotInstance::new(Arc::clone(&p), Realization::defining(&p), second)?;
    for theorem in [Theorem::CommonB, Theorem::CommonA] {
        let r = common_slot(theorem, &inst)?;
        println!("{theorem}: slot {}", r.slot);
        for q in r.presentations()? {
            println!("  {q}");
        }
        println!("  verified: {}", r.report.all_pass());
    }

    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let inst = sample_instance(&p, Kind::Bil, true, &SampleOptions::default(), &mut rng)?;
    let r = common_slot(Theorem::CommonABil, &inst)?;
    println!(
        "{}: {} and {}",
        Theorem::CommonABil,
        r.originals[0],
        r.originals[1]
    );
    println!("  slot {}, transvected {}", r.slot, r.transvected);
    for q in r.presentations()? {
        println!("  {q}");
    }
    println!("  verified: {}", r.report.all_pass());
    Ok(())
}
