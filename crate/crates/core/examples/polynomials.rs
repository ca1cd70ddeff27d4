//! Parsing, printing, derivatives and gcds.

use logfree::{gcd_multivariate, parse_poly_in, FieldSpec, Poly};

fn main() -> logfree::Result<()> {
    let vars = ["x", "y", "z"];
    let f = parse_poly_in("(x + y)^2 * (x - z)", &vars, FieldSpec::Rationals)?;
    let g = parse_poly_in("(x + y) * (x^2 - z^2)", &vars, FieldSpec::Rationals)?;
    println!("f = {f}");
    println!("g = {g}");
    println!("gcd(f, g) = {}", gcd_multivariate(&[f.clone(), g.clone()])?);
    for j in 0..3 {
        println!("d f / d {} = {}", vars[j], f.partial_derivative(j)?);
    }
    println!("euler(f) = {}", f.euler_apply());

    let h = parse_poly_in("x^2 + y*z + 3*x*y", &vars, FieldSpec::prime(2)?)?;
    println!("over GF(2): {h}, euler = {}", h.euler_apply());
    let q = Poly::exact_divide(&(&f * &g), &g)?;
    assert_eq!(q, f);

    match parse_poly_in("x + * y", &vars, FieldSpec::Rationals) {
        Err(e) => println!("{}: {e} (at byte {:?})", e.code(), e.location()),
        Ok(p) => println!("unexpected {p}"),
    }
    Ok(())
}
