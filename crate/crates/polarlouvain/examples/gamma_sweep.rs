//! Gamma sweep on a planted two-pole benchmark: how the attitude weight
//! shifts the conflict level of the detected communities.
//!
//! # Run
//!
//! ```bash
//! cargo run --example gamma_sweep
//! ```

use polarlouvain::{gamma_sweep, generate, NormMode, OperatorConfig, SyntheticSpec};

fn main() {
    let spec = SyntheticSpec {
        nodes_per_block: 30,
        blocks: 2,
        intra_prob: 0.3,
        inter_prob: 0.1,
        pole_sharpness: 16.0,
        crisp: false,
        seed: 0,
    };
    let instance = generate(&spec).unwrap();
    println!(
        "planted graph: {} nodes, {} edges, 2 blocks with opposite poles\n",
        instance.graph.node_count(),
        instance.graph.edge_count()
    );

    let cfg = OperatorConfig::default();
    let report = gamma_sweep(
        &instance.graph,
        &instance.profile,
        &cfg,
        &[0.5, 0.4, 0.3, 0.2, 0.1, 0.0],
        spec.seed,
        NormMode::PositivePairs,
        false,
    )
    .unwrap();

    println!("row        |C|>1  pol      Q(A)");
    for row in &report.rows {
        let label = match row.gamma {
            None => "baseline".to_owned(),
            Some(g) => format!("gamma={g}"),
        };
        println!(
            "{label:<10} {:<6} {:<8.4} {:<8.4}",
            row.partition.non_singleton_count(),
            row.cohesion.pol,
            row.q
        );
    }

    let baseline = report.rows[0].cohesion.pol;
    let attitude_only = report.rows.last().unwrap().cohesion.pol;
    if attitude_only < baseline {
        println!(
            "\npol drops from {baseline:.4} (structure only) to {attitude_only:.4} when the\n\
             attitude information carries all the weight."
        );
    } else {
        println!(
            "\non this instance the structural communities already align with the\n\
             poles; pol stays at {baseline:.4} across the sweep."
        );
    }
}
