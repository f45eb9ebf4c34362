//! Edge CSV ingestion, component analysis, and DOT / node-link export.
//!
//! # Run
//!
//! ```bash
//! cargo run --example edge_list_io
//! ```

use polarlouvain::{load_edge_list_from_reader, louvain, LoadOptions};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let csv = "\
# retweet interactions, directed rows collapse into undirected weights
source,target,weight
ana,bea,1
bea,ana,1
bea,carla,2
carla,ana,1
dan,eva,1
eva,frida,1
frida,dan,1
";
    let graph = load_edge_list_from_reader(csv.as_bytes(), LoadOptions::default())?;
    println!(
        "loaded {} nodes, {} edges, total weight {}",
        graph.node_count(),
        graph.edge_count(),
        graph.matrix().total_weight()
    );
    println!(
        "ana-bea weight {} (two directed rows accumulated)\n",
        graph.matrix().weight(0, 1)
    );

    let components = graph.components();
    println!("{} connected components:", components.components.len());
    for comp in &components.components {
        let labels: Vec<&str> = comp.iter().map(|&i| graph.label(i)).collect();
        println!("  {labels:?}");
    }

    let largest = graph.largest_component();
    println!(
        "\nlargest component keeps {} nodes: {:?}",
        largest.node_count(),
        largest.labels()
    );

    let (partition, _) = louvain(graph.matrix(), 0)?;
    println!("\nDOT export colored by community:\n{}", graph.to_dot(Some(&partition)));
    println!(
        "node-link JSON:\n{}",
        serde_json::to_string_pretty(&graph.to_node_link_json())?
    );
    Ok(())
}
