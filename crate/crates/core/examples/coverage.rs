use tpw_core::coxeter::WeylElt;
use tpw_core::jordanconj::{check_conjecture, sample_prop_cell_element};
use tpw_core::rng::Rng;
use std::time::Instant;

fn main() {
    let n = 4usize;
    let all = WeylElt::all(n);
    let (mut cells, mut landed, mut ok) = (0, 0, 0);
    let mut misses: Vec<String> = Vec::new();
    let run_start = Instant::now();
    for w1 in &all {
        for w2 in &all {
            if !w2.support().is_subset(&w1.support()) { continue; }
            cells += 1;
            let mut rng = Rng::new(5000 + cells as u64);
            match sample_prop_cell_element(w1, w2, &mut rng, 8) {
                Some(g) => {
                    landed += 1;
                    if check_conjecture(&g).map(|r| r.holds()).unwrap_or(false) { ok += 1; }
                    else { println!("CONJFAIL {:?} {:?}", w1, w2); }
                }
                None => misses.push(format!("{:?}/{:?}", w1.canonical_word(), w2.canonical_word())),
            }
            if cells % 60 == 0 { println!("... {cells} cells, {landed} landed, {:?}", run_start.elapsed()); }
        }
    }
    println!("n={n}: cells={cells} landed={landed} ok={ok} misses={} total={:?}", misses.len(), run_start.elapsed());
    for m in &misses { println!("  MISS {m}"); }
}
