use std::time::Instant;
use gsa_core::group::{classify_generated, is_primitive, AltSym, PermGroup};
use gsa_core::Perm;

fn sym_gens(m: usize) -> Vec<Perm> {
    let mut cycle: Vec<u32> = (1..m as u32).collect();
    cycle.push(0);
    let long = Perm::from_images(cycle).unwrap();
    let mut sw: Vec<u32> = (0..m as u32).collect();
    sw.swap(0, 1);
    vec![Perm::from_images(sw).unwrap(), long]
}

fn wreath_gens(b: usize) -> Vec<Perm> {
    // subgroup of S2 wr Sym(b) on 2b points: block swaps + block permutation
    let m = 2 * b;
    let mut swap01: Vec<u32> = (0..m as u32).collect();
    swap01.swap(0, 1);
    let mut blockcycle: Vec<u32> = (0..m as u32).collect();
    for i in 0..b {
        let j = (i + 1) % b;
        blockcycle[2 * i] = (2 * j) as u32;
        blockcycle[2 * i + 1] = (2 * j + 1) as u32;
    }
    let mut blockswap: Vec<u32> = (0..m as u32).collect();
    blockswap.swap(0, 2);
    blockswap.swap(1, 3);
    vec![
        Perm::from_images(swap01).unwrap(),
        Perm::from_images(blockcycle).unwrap(),
        Perm::from_images(blockswap).unwrap(),
    ]
}

#[test]
fn bench_classify() {
    for m in [100usize, 345, 690] {
        let t = Instant::now();
        let (class, order) = classify_generated(m, &sym_gens(m)).unwrap();
        println!("Sym({m}): {:?} digits={} in {:?}", class, order.to_string().len(), t.elapsed());
        assert_eq!(class, AltSym::Sym);
    }
    for b in [50usize, 117, 234] {
        let t = Instant::now();
        let gens = wreath_gens(b);
        assert!(!is_primitive(2 * b, &gens));
        let (class, order) = classify_generated(2 * b, &gens).unwrap();
        println!("wreath 2x{b}: {:?} digits={} in {:?}", class, order.to_string().len(), t.elapsed());
        assert_eq!(class, AltSym::Other);
    }
}

#[test]
fn bench_full_chain_sym() {
    // exercise the verified chain directly (no shortcuts)
    for m in [60usize, 120, 200] {
        let t = Instant::now();
        let g = PermGroup::new(sym_gens(m)).unwrap();
        println!("verified Sym({m}) chain: digits={} in {:?}", g.order().to_string().len(), t.elapsed());
    }
}
