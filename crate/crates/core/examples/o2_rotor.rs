//! Planar-rotor (O(2)) annealing and its agreement with the O(3) model.
use spinanneal::chimera::{build_chimera, ChimeraSpec};
use spinanneal::stats::correlate;
use spinanneal::{
    chimera_dp_ground, gen_instance, success_probability, AnnealParamsO2, AnnealParamsO3,
    O2Annealer, O3Annealer, Solver,
};

fn main() -> spinanneal::Result<()> {
    let spec = ChimeraSpec::new(2, 2, 4);
    let graph = build_chimera(&spec)?;
    let o2 = O2Annealer::new(AnnealParamsO2::default());
    let o3 = O3Annealer::new(AnnealParamsO3 {
        t_f: 100.0,
        ..Default::default()
    });
    let (mut a, mut b) = (Vec::new(), Vec::new());
    for seed in 0..12 {
        let mut inst = gen_instance(&graph, seed);
        inst.id = format!("i{seed}");
        let ground = chimera_dp_ground(&inst, &spec)?;
        a.push(success_probability(&o3 as &dyn Solver, &inst, &ground, 30, 1)?);
        b.push(success_probability(&o2 as &dyn Solver, &inst, &ground, 30, 1)?);
        println!("{}: O3 {:.2}  O2 {:.2}", inst.id, a[seed as usize].p_hat, b[seed as usize].p_hat);
    }
    let c = correlate(&a, &b)?;
    println!("pearson {:.3}, spearman {:.3}", c.pearson_r, c.spearman_rho);
    Ok(())
}
