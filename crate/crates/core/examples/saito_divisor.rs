//! Classical Saito check for the tangent developable quartic.

use logfree::cli::{freeness_json, Command};
use logfree::fixtures::{tangent_quartic, TANGENT_QUARTIC_MISPRINT};
use logfree::{check_divisor_free, euler_column, parse_poly, DetMethod};

fn main() -> logfree::Result<()> {
    let (sigma, nu) = tangent_quartic();
    let f = &sigma.polys[0];
    let theta = euler_column(f.ring()).hconcat(&nu)?;
    println!("f          = {f}");
    println!("det(E | nu) = {}", theta.determinant(DetMethod::Bareiss)?);

    let cert = check_divisor_free(f, &nu, DetMethod::Bareiss)?;
    println!("verdict {:?}, h = {}, O(-e) twists {:?}", cert.verdict, cert.h, cert.twists());
    println!("{}", serde_json::to_string_pretty(&freeness_json(&cert, Command::CheckDivisor)).unwrap());

    let bad = parse_poly(TANGENT_QUARTIC_MISPRINT, f.ring())?;
    match check_divisor_free(&bad, &nu, DetMethod::Bareiss) {
        Err(e) => println!("with coefficient 1 on x0^2*x1^2: {e}"),
        Ok(c) => println!("unexpected {:?}", c.verdict),
    }
    Ok(())
}
