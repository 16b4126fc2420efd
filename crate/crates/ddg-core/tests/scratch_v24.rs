use ddg_core::enumerate::{enumerate_all, SearchConfig};
use std::time::Instant;

#[test]
#[ignore]
fn sweep() {
    let vs: Vec<u32> = std::env::var("VS")
        .unwrap_or_else(|_| "8,12,15,16,18,20".into())
        .split(',')
        .map(|s| s.parse().unwrap())
        .collect();
    for v in vs {
        let t0 = Instant::now();
        let outcomes = enumerate_all(v, &SearchConfig::default());
        for o in &outcomes {
            let splits: Vec<String> = {
                let mut by: std::collections::BTreeMap<(u32, u32), usize> = Default::default();
                for g in &o.graphs {
                    *by.entry(g.g_split).or_default() += 1;
                }
                by.iter().rev().map(|(k, c)| format!("g={k:?}:{c}")).collect()
            };
            println!(
                "v={v} {:?} quotients={} graphs={} [{}] nodes={} wall={:?}",
                o.tuple.params,
                o.quotients.len(),
                o.graphs.len(),
                splits.join(" "),
                o.stats.nodes,
                o.stats.wall
            );
        }
        println!("== v={v} total {:?}", t0.elapsed());
    }
}
