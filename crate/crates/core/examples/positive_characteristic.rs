//! Splitting of T_sigma when the characteristic divides every degree.

use logfree::fixtures::{conic_f2, coordinate_triangle_f3};
use logfree::{parse_poly_in, positive_char_split, FieldSpec, SequenceSpec};

fn main() -> logfree::Result<()> {
    let extra = SequenceSpec::new(vec![
        parse_poly_in("x0^3*x1 + x1^2*x2*x3 + x3^4", &["x0", "x1", "x2", "x3"], FieldSpec::prime(2)?)?,
        parse_poly_in("x0*x1 + x2*x3", &["x0", "x1", "x2", "x3"], FieldSpec::prime(2)?)?,
    ])?;
    for sigma in [coordinate_triangle_f3(), conic_f2(), extra] {
        let c = positive_char_split(&sigma, None)?;
        let polys: Vec<String> = sigma.polys.iter().map(|f| f.to_string()).collect();
        println!("GF({}) {:?}: d = {}, oracle {:?}, certified {}, +1 variant {}", c.char_p, polys, c.d, c.oracle_degrees, c.certified, c.printed_formula_d);
        if let Some(pair) = &c.syzygy_pair {
            for row in pair.to_strings() {
                println!("    {}", row.join("  "));
            }
        }
    }
    Ok(())
}
