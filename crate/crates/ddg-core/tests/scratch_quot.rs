use ddg_core::params::feasible_parameters;
use ddg_core::quotient::enumerate_quotients;
use std::time::Instant;

#[test]
#[ignore]
fn quot_timing() {
    let v: u32 = std::env::var("V").unwrap().parse().unwrap();
    for t in feasible_parameters(v) {
        if t.families.any() {
            continue;
        }
        let t0 = Instant::now();
        let qs = enumerate_quotients(&t.params, &t.profiles);
        println!("{:?} -> {} quotients in {:?}", t.params, qs.len(), t0.elapsed());
    }
}
