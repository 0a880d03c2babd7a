//! Arithmetic in GF(2^k) and in truncated Laurent series over it.

use char2q::fields::FieldDescriptor;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let f8: FieldDescriptor = "gf(8)".parse()?;
    let g = f8.generator();
    println!("{f8}: g = {g}, g^7 = {}, 1/g = {}", g.pow(7), g.inv()?);
    println!("trace-one element: {}", f8.trace_one());

    let f: FieldDescriptor = "laurent(gf(2),prec=16)".parse()?;
    let t = f.t();
    let a = f.parse("t^-3 + t + 1")?;
    println!("{f}: a = {a}");
    println!("a^2 = {}", a.square());
    println!("1/(1+t) = {}", (&f.one() + &t).inv()?);
    println!("wp(a) = a^2 + a = {}", a.wp());
    let r = a.artin_schreier_reduce()?;
    println!(
        "a reduced mod wp(F) = {r} (constant trace {})",
        r.constant_trace()?
    );
    Ok(())
}
