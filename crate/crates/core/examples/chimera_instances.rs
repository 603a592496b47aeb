//! Build a chimera graph, draw a random ±1 instance and evaluate energies.
use spinanneal::chimera::{build_chimera, ChimeraSpec};
use spinanneal::instance::format_instance;
use spinanneal::{energy, gen_instance, Gauge, SpinConfig};

fn main() -> spinanneal::Result<()> {
    let spec = ChimeraSpec::new(2, 2, 4).with_mask([3, 17]);
    let graph = build_chimera(&spec)?;
    println!(
        "C(2,2,4): {} vertices, {} active, {} edges",
        graph.n_vertices(),
        graph.n_active(),
        graph.n_edges()
    );

    let inst = gen_instance(&graph, 42);
    let up = SpinConfig::all_up(graph.n_vertices());
    println!("E(all up) = {}", energy(&inst, &up)?);

    // a gauge transform relabels spins without changing any energy
    let gauge = Gauge::random(graph.n_vertices(), 7);
    let mirrored = gauge.apply_instance(&inst)?;
    println!("E after gauge = {}", energy(&mirrored, &gauge.apply_config(&up))?);

    let text = format_instance(&inst);
    println!("file form, first lines:");
    for line in text.lines().take(4) {
        println!("  {line}");
    }
    Ok(())
}
