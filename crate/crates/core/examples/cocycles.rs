//! Subgroups, 2-cocycle classes and the characters ψ_g of a finite abelian group.

use qlsmodcat::cohomology::cocycle_classes;
use qlsmodcat::group::AbelianGroup;

fn main() -> qlsmodcat::Result<()> {
    let g = AbelianGroup::new(vec![2, 4])?;
    let subgroups = g.enumerate_subgroups(64)?;
    println!("Z2 x Z4 has {} subgroups", subgroups.len());
    for f in &subgroups {
        let classes = cocycle_classes(f);
        println!("  |F| = {}: {} cocycle class(es)", f.order(), classes.len());
    }

    let whole = g.whole();
    for psi in cocycle_classes(&whole) {
        println!("class {} trivial={}", psi.class_tag(), psi.is_cohomologically_trivial());
        for x in whole.elements() {
            println!("    psi_{:?} = {:?}", x.exps, psi.psi_g(&x)?.exps);
        }
        // multiplying by a coboundary keeps the class
        let mu: Vec<u32> = (0..whole.order() as u32).map(|k| k * k % 4).collect();
        let twisted = psi.times_coboundary(4, &mu)?;
        assert_eq!(twisted.class_tag(), psi.class_tag());
    }
    Ok(())
}
