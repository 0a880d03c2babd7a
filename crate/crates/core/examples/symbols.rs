//! Class bits of [a,b) and ((a,b)) over a finite field and over F2((t)).

use char2q::fields::FieldDescriptor;
use char2q::quaternion::Kind;
use char2q::symbols::{bil_to_as, symbol_value};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let f: FieldDescriptor = "laurent(gf(2),prec=32)".parse()?;
    let cases = [
        (Kind::As, "1", "t"),
        (Kind::As, "1", "1+t"),
        (Kind::As, "t^-1", "t"),
        (Kind::Bil, "t", "1+t"),
        (Kind::Bil, "t", "t^3"),
    ];
    for (kind, a, b) in cases {
        let v = symbol_value(kind, &f.parse(a)?, &f.parse(b)?, false)?;
        let split = if v.is_split() { "split" } else { "division" };
        println!("{v}: {} ({split}, {})", v.invariant, v.method);
    }
    let as_form = bil_to_as(&f.parse("t")?, &f.parse("1+t")?)?;
    println!("((t, 1+t)) as an Artin-Schreier symbol: {as_form}");

    let f4: FieldDescriptor = "gf(4)".parse()?;
    let w = f4.generator();
    let v = symbol_value(Kind::As, &w, &f4.one(), false)?;
    println!("over {f4}: {v} = {}", v.invariant);
    Ok(())
}
