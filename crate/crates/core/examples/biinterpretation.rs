//! The graphs θ_BS and θ_ℤ that make Δ and Γ a bi-interpretation, checked on
//! a box, once as stated and once with a sign flipped.

use bsinterp::definable::WitnessConfig;
use bsinterp::group::BsGroup;
use bsinterp::interp::{theta_z_check, verify_biinterp, BiinterpBox, ParamPair};

fn main() -> bsinterp::Result<()> {
    let k = 2;
    let g = BsGroup::new(k as i64)?;
    println!("theta_Z(3, -1, 2, 2) with b1 = (1, 1): {}", theta_z_check(k, [3, -1, 2, 2], [1, 0, 0, 1, 0, 1])?);

    let bx = BiinterpBox { z_max: 2, i_min: -1, i_max: 1, m_max: 2 };
    let pairs = &ParamPair::samples(&g)[..2];
    let cfg = WitnessConfig::new(&g);
    for mutate in [false, true] {
        let report = verify_biinterp(k, &bx, pairs, mutate, &cfg)?;
        println!("mutate = {mutate}: {} instances, {} violations", report.checked, report.violations.len());
        if let Some(v) = report.violations.first() {
            println!("  first: {} at {} (expected {}, got {})", v.check, v.instance, v.expected, v.got);
        }
    }
    Ok(())
}
