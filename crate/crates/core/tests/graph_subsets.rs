//! Inside the graph of a function, star-free subsets are exactly the
//! cylinder intersections. Checked over every subset of small tables.

use noflab::*;

fn check_all_subsets(f: &GraphFunctionTable) {
    let pts = f.accepted_points();
    for mask in 0u32..1 << pts.len() {
        let s = PointSet::new(f.dims(), pts.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, p)| p.clone())).unwrap();
        let closed = closure_min(&s) == s;
        assert_eq!(is_star_free(&s), closed, "table {:?}, subset {mask:#b}", f.raw());
        assert_eq!(is_cylinder_intersection(&s), closed);
    }
}

#[test]
fn every_two_by_two_table() {
    for code in 0u32..16 {
        let table = (0..4).map(|i| code >> i & 1).collect();
        check_all_subsets(&GraphFunctionTable::new(3, 2, 2, table).unwrap());
    }
}

#[test]
fn every_latin_square_of_order_three() {
    let perms: Vec<[u32; 3]> = vec![[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
    let mut count = 0;
    for a in &perms {
        for b in &perms {
            for c in &perms {
                let latin = (0..3).all(|j| a[j] != b[j] && b[j] != c[j] && a[j] != c[j]);
                if latin {
                    let table = a.iter().chain(b).chain(c).copied().collect();
                    let f = GraphFunctionTable::new(3, 3, 3, table).unwrap();
                    assert_eq!(validate_table(&f).unwrap(), TableKind::Permutation);
                    check_all_subsets(&f);
                    count += 1;
                }
            }
        }
    }
    assert_eq!(count, 12);
}
