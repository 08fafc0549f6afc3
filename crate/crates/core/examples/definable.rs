//! The definable sets α, β, δ, τ, π, …: semantic truth next to the witnesses
//! the proofs construct.

use bsinterp::definable::{agreement_sweep, semantic, standard_tuples, witness_check, Name, WitnessConfig};
use bsinterp::group::BsGroup;

fn main() -> bsinterp::Result<()> {
    let g = BsGroup::new(2)?;
    let cfg = WitnessConfig::new(&g);
    let b = g.b();
    let cases = [
        (Name::Alpha, vec![g.elem(1, 0, 2)]),
        (Name::Beta, vec![g.mul(&g.a(), &b)]),
        (Name::Delta, vec![g.pow(&b, 6), g.pow(&b, 3)]),
        (Name::Delta, vec![g.pow(&b, 5), g.pow(&b, 3)]),
        (Name::Tau, vec![g.pow(&g.a(), 2), g.pow(&g.a(), 6), g.pow(&b, 3), b.clone()]),
        (Name::Pi, vec![g.elem(3, 0, 0)]),
    ];
    for (name, args) in cases {
        let shown: Vec<String> = args.iter().map(ToString::to_string).collect();
        let truth = semantic(&g, name, &args)?;
        let report = witness_check(&g, name, &args, &cfg)?;
        println!("{}({}): semantic {truth}, witnessed {}", name.as_str(), shown.join(", "), report.verdict);
        if let Some(cx) = report.counterexample() {
            println!("    {cx}");
        }
    }

    let sweep = agreement_sweep(&g, Name::Delta, &standard_tuples(&g, Name::Delta), &cfg)?;
    println!(
        "delta sweep: {} tuples, {} negative, {} disagreements",
        sweep.checked,
        sweep.negatives,
        sweep.disagreements.len()
    );
    Ok(())
}
