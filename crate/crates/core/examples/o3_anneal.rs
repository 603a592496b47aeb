//! Semi-classical O(3) annealing: success probability with and without damping.
use spinanneal::chimera::{build_chimera, ChimeraSpec};
use spinanneal::o3::{readout, run_o3_observed, sample_kick_state};
use spinanneal::{
    chimera_dp_ground, gen_instance, success_probability, AnnealParamsO3, O3Annealer,
};

fn main() -> spinanneal::Result<()> {
    let spec = ChimeraSpec::new(2, 2, 4);
    let inst = gen_instance(&build_chimera(&spec)?, 3);
    let ground = chimera_dp_ground(&inst, &spec)?;

    let params = AnnealParamsO3 {
        t_f: 100.0,
        ..Default::default()
    };
    for alpha in [0.0, params.alpha] {
        let solver = O3Annealer::new(AnnealParamsO3 { alpha, ..params });
        let rec = success_probability(&solver, &inst, &ground, 50, 0)?;
        println!("alpha {alpha}: {}/{} runs reach E = {}", rec.successes, rec.repetitions, ground.energy);
    }

    // watch the z components grow as the transverse field is switched off
    let start = sample_kick_state(inst.n_vertices(), params.kappa, 9)?;
    let steps = params.n_steps();
    let last = run_o3_observed(&inst, &params, start, |k, st| {
        if (k + 1) % (steps / 5) == 0 {
            let mz: f64 = st.vectors.iter().map(|m| m[2].abs()).sum::<f64>() / st.vectors.len() as f64;
            println!("  s = {:.1}: mean |Mz| = {mz:.3}", (k + 1) as f64 / steps as f64);
        }
    })?;
    println!("readout: {:?}", readout(&last).as_slice());
    Ok(())
}
