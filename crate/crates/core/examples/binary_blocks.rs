//! Sequences on disjoint variable groups: one binary form per group.

use logfree::fixtures::binary_blocks;
use logfree::{block_sequence, check_sequence, parse_poly, Block, CheckOptions, FieldSpec, MonomialOrder, Ring};

fn main() -> logfree::Result<()> {
    let (ring, blocks) = binary_blocks();
    let inst = block_sequence(&ring, &blocks, None)?;
    let cert = check_sequence(&inst.sigma, &inst.nu, &inst.gamma, CheckOptions::default())?;
    println!("x00*x01, x10*x11: {:?}, twists {:?}", cert.verdict, cert.twists());
    let arranged = cert.theta.select_columns(&[0, 2, 1, 3]);
    println!("det of block-arranged theta = {}", arranged.determinant(Default::default())?);

    let names = ["a0", "a1", "b0", "b1", "c0", "c1", "c2", "c3", "c4"];
    let r = Ring::new(FieldSpec::Rationals, &names, MonomialOrder::GrevLex);
    let p = |s: &str| parse_poly(s, &r);
    let group = |vs: &[&str], fs: Vec<logfree::Poly>| Block { vars: vs.iter().map(|s| s.to_string()).collect(), polys: fs };
    let blocks = vec![
        group(&["a0", "a1"], vec![p("a0^2 + 3*a0*a1 - a1^2")?]),
        group(&["b0", "b1"], vec![p("b0^3 - b0*b1^2")?]),
        group(&["c0", "c1", "c2", "c3", "c4"], vec![p("c2^2 - 2*c1*c3 + 2*c0*c4")?, p("2*c2^3 - 6*c1*c2*c3 + 9*c0*c3^2 + 6*c1^2*c4 - 12*c0*c2*c4")?]),
    ];
    let inst = block_sequence(&r, &blocks, None)?;
    let cert = check_sequence(&inst.sigma, &inst.nu, &inst.gamma, CheckOptions::default())?;
    println!("mixed blocks: {:?}, h = {}, splitting {:?}", cert.verdict, cert.h, cert.splitting_degrees);
    Ok(())
}
