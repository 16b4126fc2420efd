use ddg_core::enumerate::{enumerate_all, SearchConfig};
use std::time::Instant;

#[test]
#[ignore]
fn timing_small_v() {
    for v in [8u32, 12, 15, 16, 18, 20] {
        let t0 = Instant::now();
        let outcomes = enumerate_all(v, &SearchConfig::default());
        for o in &outcomes {
            println!(
                "v={v} tuple={:?} quotients={} graphs={} nodes={} wall={:?}",
                o.tuple.params,
                o.quotients.len(),
                o.graphs.len(),
                o.stats.nodes,
                o.stats.wall
            );
        }
        println!("== v={v} total {:?}", t0.elapsed());
    }
}
