use ddg_core::enumerate::{complete_graphs, SearchConfig};
use ddg_core::params::feasible_parameters;
use ddg_core::quotient::enumerate_quotients;
use std::time::Instant;

#[test]
#[ignore]
fn hot_tuple() {
    let v: u32 = std::env::var("V").unwrap().parse().unwrap();
    let pick: String = std::env::var("T").unwrap();
    let t = feasible_parameters(v)
        .into_iter()
        .find(|t| format!("{:?}", t.params) == pick)
        .expect("tuple");
    let quotients = enumerate_quotients(&t.params, &t.profiles);
    println!("{} quotients", quotients.len());
    for (i, r) in quotients.iter().enumerate() {
        let t0 = Instant::now();
        let (graphs, stats) = complete_graphs(&t.params, r, &SearchConfig::default()).unwrap();
        println!(
            "quotient {i}: graphs={} nodes={} rejected={} wall={:?} ({:?} total)",
            graphs.len(),
            stats.nodes,
            stats.equivalent_rejected,
            stats.wall,
            t0.elapsed()
        );
    }
}
