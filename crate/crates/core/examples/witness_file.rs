//! Sample a random common-slot instance and print it in the layout read by
//! `char2q slot ... --witness-file`.

use char2q::cli::witness_file_json;
use char2q::fields::FieldDescriptor;
use char2q::quaternion::{Kind, Presentation, SampleOptions};
use char2q::slots::sample_instance;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let seed = std::env::args()
        .nth(1)
        .map(|s| s.parse())
        .transpose()?
        .unwrap_or(1);
    let f: FieldDescriptor = "laurent(gf(2),prec=16)".parse()?;
    let ambient = Presentation::artin_schreier(f.one(), f.t())?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let inst = sample_instance(
        &ambient,
        Kind::Bil,
        false,
        &SampleOptions::default(),
        &mut rng,
    )?;
    println!(
        "{}",
        serde_json::to_string_pretty(&witness_file_json(&inst))?
    );
    Ok(())
}
