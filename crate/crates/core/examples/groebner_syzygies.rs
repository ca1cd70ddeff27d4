//! Gröbner bases, syzygies and algebraic independence.

use logfree::groebner::minimal_generators;
use logfree::{algebraic_independence, buchberger, normal_form, parse_poly_in, syzygy_basis, FieldSpec, MonomialOrder};
use logfree::{jacobian, ModVec};

fn main() -> logfree::Result<()> {
    let vars = ["x", "y", "z"];
    let q = |s: &str| parse_poly_in(s, &vars, FieldSpec::Rationals);
    let twisted = [q("x*z - y^2")?, q("y - x^2")?, q("z - x*y")?];
    let gb = buchberger(&twisted, MonomialOrder::Lex)?;
    println!("lex basis ({} elements, S-pairs reduce: {}):", gb.len(), gb.s_pairs_reduce_to_zero());
    for g in gb.polys() {
        println!("  {g}");
    }
    let g0 = q("z^2 - y^3")?.to_ring(gb.ring())?;
    println!("normal form of z^2 - y^3: {}", normal_form(&g0, &gb)?);

    let fermat = q("x^3 + y^3 + z^3")?;
    let syz = syzygy_basis(&jacobian(std::slice::from_ref(&fermat))?, None)?;
    println!("Fermat cubic syzygy degrees {:?}", syz.degrees);
    let gens: Vec<ModVec> = syz.columns.clone();
    println!("re-minimized: {}", minimal_generators(fermat.ring(), &gens, &[0, 0, 0])?.len());

    for seq in [vec![q("x^2")?, q("y^2")?], vec![q("x*y")?, q("x^2*y^2")?]] {
        let ind = algebraic_independence(&seq)?;
        println!("independent: {}, relation: {:?}", ind.independent, ind.witness.map(|w| w.to_string()));
    }
    Ok(())
}
