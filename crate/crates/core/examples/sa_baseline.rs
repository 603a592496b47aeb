//! Metropolis simulated annealing as a classical baseline.
use spinanneal::chimera::{build_chimera, ChimeraSpec};
use spinanneal::{chimera_dp_ground, gen_instance, success_probability, SaAnnealer, SaSchedule};

fn main() -> spinanneal::Result<()> {
    let spec = ChimeraSpec::new(4, 4, 4);
    let inst = gen_instance(&build_chimera(&spec)?, 5);
    let ground = chimera_dp_ground(&inst, &spec)?;
    for sweeps in [10, 100, 1000] {
        let solver = SaAnnealer::new(SaSchedule {
            sweeps,
            ..Default::default()
        });
        let rec = success_probability(&solver, &inst, &ground, 100, 0)?;
        println!("{sweeps:>5} sweeps: p = {:.2}", rec.p_hat);
    }
    Ok(())
}
