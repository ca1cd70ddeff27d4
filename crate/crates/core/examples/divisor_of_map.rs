//! Divisors of maps via gcds of maximal minors, on a composite of rank one.

use logfree::fixtures::rank_deficient_composite;
use logfree::DetMethod;

fn main() -> logfree::Result<()> {
    let (alpha, theta) = rank_deficient_composite();
    let prod = alpha.mat_mul(&theta)?;
    for (name, m) in [("alpha", &alpha), ("theta", &theta), ("alpha*theta", &prod)] {
        let minors: Vec<String> = m.maximal_minors(None, DetMethod::Bareiss)?.iter().map(|p| p.to_string()).collect();
        let dv = m.divisor_of_map()?;
        println!("{name:12} rank {} minors {:?} -> dv = V({}), rank deficient: {}", m.generic_rank(), minors, dv.equation, dv.rank_deficient);
    }
    Ok(())
}
