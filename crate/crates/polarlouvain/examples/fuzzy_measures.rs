//! Pairwise conflict and dialogue measures from a membership profile.
//!
//! # Run
//!
//! ```bash
//! cargo run --example fuzzy_measures
//! ```

use polarlouvain::{
    build_dialogue_matrix, build_risk_matrix, convex_combine, jdj_pol, pair_risk,
    MembershipProfile, OperatorConfig, TwoAdditiveFuzzyMeasure,
};

fn main() {
    println!("=== Conflict and dialogue measures on four crisp nodes ===\n");

    // nodes 0 and 2 lean to pole A, nodes 1 and 3 to pole B
    let profile = MembershipProfile::crisp(&[true, false, true, false]);
    let cfg = OperatorConfig::default(); // max / product / 1-x

    println!("pair risks (1 = certain conflict):");
    for i in 0..4 {
        for j in (i + 1)..4 {
            println!("  ({i},{j}) -> {}", pair_risk(i, j, &profile, &cfg));
        }
    }
    println!(
        "total conflict of the whole set: {}\n",
        jdj_pol(&[0, 1, 2, 3], &profile, &cfg)
    );

    let risk = TwoAdditiveFuzzyMeasure::new(build_risk_matrix(&profile, &cfg).unwrap());
    let dialogue = TwoAdditiveFuzzyMeasure::new(build_dialogue_matrix(&profile, &cfg).unwrap());

    println!("subset        risk   dialogue");
    let subsets: [&[usize]; 6] = [&[0, 1], &[0, 2], &[0, 1, 2], &[1, 2, 3], &[1, 3], &[0, 1, 2, 3]];
    for s in subsets {
        println!(
            "{:<13} {:<6} {:<6}",
            format!("{s:?}"),
            risk.value(s),
            dialogue.value(s)
        );
    }

    println!("\nconvex combination (half risk, half dialogue):");
    let mixed = convex_combine(&[risk, dialogue], &[0.5, 0.5]).unwrap();
    for s in subsets {
        println!("{:<13} {}", format!("{s:?}"), mixed.value(s));
    }

    println!("\n=== Fuzzy degrees ===\n");
    let fuzzy = MembershipProfile::new(vec![0.022, 0.756, 0.5], vec![0.878, 0.144, 0.5]).unwrap();
    for i in 0..3 {
        for j in (i + 1)..3 {
            println!(
                "  pair ({i},{j}): risk {:.6}",
                pair_risk(i, j, &fuzzy, &cfg)
            );
        }
    }
}
