//! Shapley summaries of a 2-additive measure: the O(n) row-sum form
//! checked against the exact permutation average, and the associated
//! weighted graph.
//!
//! # Run
//!
//! ```bash
//! cargo run --example shapley_summary
//! ```

use polarlouvain::{
    associated_graph, build_dialogue_matrix, shapley_brute_force_all, shapley_closed_form,
    shapley_restricted, MembershipProfile, OperatorConfig, ShapleyVector,
    TwoAdditiveFuzzyMeasure,
};

fn main() {
    let profile = MembershipProfile::new(
        vec![0.022, 0.756, 0.751, 0.5, 0.001, 0.102, 0.889],
        vec![0.878, 0.144, 0.099, 0.5, 0.989, 0.888, 0.112],
    )
    .unwrap();
    let cfg = OperatorConfig::default();
    let measure = TwoAdditiveFuzzyMeasure::new(build_dialogue_matrix(&profile, &cfg).unwrap());

    println!("=== Shapley values of the dialogue measure (7 nodes) ===\n");
    let closed = ShapleyVector::of(&measure);
    let brute = shapley_brute_force_all(measure.n(), |mask| measure.value_of_mask(mask)).unwrap();
    println!("node  closed-form  permutation-average  |diff|");
    for i in 0..measure.n() {
        println!(
            "{i:>4}  {:>11.8}  {:>19.8}  {:.2e}",
            closed.get(i),
            brute[i],
            (closed.get(i) - brute[i]).abs()
        );
    }
    println!(
        "\nefficiency: values sum to {:.12}",
        closed.values().iter().sum::<f64>()
    );

    println!("\nremoving a node costs its partner exactly their pair entry:");
    let (i, j) = (0, 4);
    println!(
        "  Sh_{i} = {:.8}, Sh_{i} without node {j} = {:.8}, pair entry = {:.8}",
        shapley_closed_form(&measure, i),
        shapley_restricted(&measure, i, j),
        measure.matrix().get(i, j)
    );

    println!("\n=== Associated weighted graph ===\n");
    let f = associated_graph(&measure, &cfg);
    println!(
        "symmetrizer {} on a symmetric matrix reproduces it entrywise: {}",
        f.symmetrizer(),
        (0..7).all(|i| (0..7).all(|j| f.get(i, j) == measure.matrix().get(i, j)))
    );
}
