//! The generalized criterion on the quadric and cubic through the tangent
//! developable of the rational normal quartic, plus a syzygy search.

use logfree::fixtures::{tangent_quartic, tangent_quartic_curve, tangent_quartic_curve_regenerated};
use logfree::{check_sequence, find_candidate_nu, syzygy_basis, CheckOptions, Gamma};

fn main() -> logfree::Result<()> {
    let (sigma, nu) = tangent_quartic_curve();
    let cert = check_sequence(&sigma, &nu, &Gamma::Euler, CheckOptions::default())?;
    println!("(f, g): {:?}, h = {}, splitting {:?}", cert.verdict, cert.h, cert.splitting_degrees);
    println!("  gcds: theta {}, alpha {}, alpha*gamma {}", cert.g_theta, cert.g_alpha, cert.g_alphagamma);

    let other = tangent_quartic_curve_regenerated();
    let syz = syzygy_basis(&other.jacobian(), Some(4))?;
    println!("(f, x0 f + g): minimal syzygy degrees {:?}", syz.degrees);

    let (quartic, printed) = tangent_quartic();
    let cands = find_candidate_nu(&quartic, 3)?;
    println!("quartic: {} candidate(s)", cands.len());
    if let Some(c) = cands.first() {
        for row in c.to_strings() {
            println!("  {}", row.join("  "));
        }
        let cert = logfree::check_divisor_free(&quartic.polys[0], c, Default::default())?;
        println!(
            "  found: {:?}, h = {}; printed matrix h = {}",
            cert.verdict,
            cert.h,
            logfree::check_divisor_free(&quartic.polys[0], &printed, Default::default())?.h
        );
    }
    Ok(())
}
