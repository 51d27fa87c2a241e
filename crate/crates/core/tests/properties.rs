use npslab::checks::{check_swap_stability, check_trace};
use npslab::partition::alpha_forms;
use npslab::stats::{aggregate, aggregate_exhaustive, Mode};
use npslab::{
    cell_stats, column_order, conjugate, conjugate_tableau, neighbors, row_order, strip_order, Aggregate64, Partition,
    Sorter, StripChoice, Tableau,
};
use proptest::prelude::*;

fn partition(max_rows: usize, max_part: usize) -> impl Strategy<Value = Partition> {
    prop::collection::vec(1..=max_part, 1..=max_rows).prop_map(|mut v| {
        v.sort_unstable_by(|a, b| b.cmp(a));
        Partition::new(v).unwrap()
    })
}

/// A shape together with a random filling of it.
fn filled(max_rows: usize, max_part: usize) -> impl Strategy<Value = Tableau> {
    partition(max_rows, max_part).prop_flat_map(|p| {
        let n = p.size();
        Just((1..=n).collect::<Vec<_>>()).prop_shuffle().prop_map(move |e| Tableau::new(p.clone(), e).unwrap())
    })
}

fn choices() -> impl Strategy<Value = Vec<StripChoice>> {
    prop::collection::vec(prop::bool::ANY.prop_map(|r| if r { StripChoice::Row } else { StripChoice::Column }), 20)
}

proptest! {
    #[test]
    fn conjugation_is_an_involution(p in partition(8, 8)) {
        let q = conjugate(&p);
        prop_assert_eq!(q.size(), p.size());
        prop_assert_eq!(conjugate(&q), p.clone());
        let u = row_order(&p);
        prop_assert_eq!(conjugate_tableau(&conjugate_tableau(&u)), u.clone());
        prop_assert_eq!(conjugate_tableau(&u), column_order(&q));
    }

    #[test]
    fn cell_statistics(p in partition(8, 8)) {
        let q = conjugate(&p);
        for x in p.cells() {
            let s = cell_stats(&p, x).unwrap();
            prop_assert_eq!(s.hook, s.arm + s.leg + 1);
            prop_assert_eq!(s.height, s.coarm + s.coleg);
            prop_assert_eq!(s.arm + s.coarm + 1, p.row_len(x.row));
            prop_assert_eq!(s.leg + s.coleg + 1, q.row_len(x.col));
            for y in neighbors(&p, x).unwrap().plus {
                prop_assert_eq!(y.height(), x.height() + 1);
            }
        }
        let [a, b, c] = alpha_forms::<npslab::Int>(&p).unwrap();
        prop_assert!(a == b && b == c);
    }

    #[test]
    fn strip_orders_are_standard(p in partition(7, 7), ch in choices()) {
        let u = strip_order(&p, &ch).unwrap();
        prop_assert!(u.is_standard());
        let all_rows = vec![StripChoice::Row; p.size()];
        let all_cols = vec![StripChoice::Column; p.size()];
        prop_assert_eq!(strip_order(&p, &all_rows).unwrap(), row_order(&p));
        prop_assert_eq!(strip_order(&p, &all_cols).unwrap(), column_order(&p));
    }

    #[test]
    fn standard_means_ordered_everywhere(t in filled(4, 4)) {
        let cells: Vec<_> = t.shape().cells().collect();
        prop_assert_eq!(t.is_standard(), t.is_ordered_on(&cells));
    }

    #[test]
    fn sorting_invariants(t in filled(4, 4)) {
        for u in [column_order(t.shape()), row_order(t.shape())] {
            let sorter = Sorter::new(&u).unwrap();
            let trace = sorter.sort(&t).unwrap();
            check_trace(&trace).unwrap();
            // The optimized scan agrees with the plain definition.
            let mut cur = t.clone();
            for s in trace.steps() {
                let (next, step) = sorter.step(&cur).unwrap();
                prop_assert_eq!(step.x, s.x);
                prop_assert_eq!(step.y, s.y);
                cur = next;
            }
            prop_assert_eq!(sorter.find_active_cell(&cur).unwrap(), None);
            for b in 1..t.size() {
                check_swap_stability(&sorter, &t, b).unwrap();
            }
        }
    }

    #[test]
    fn tallies_do_not_depend_on_worker_count(p in partition(3, 3), w in 2usize..5) {
        let u = column_order(&p);
        let one: Aggregate64 = aggregate_exhaustive(&u, Some(1)).unwrap();
        let many: Aggregate64 = aggregate_exhaustive(&u, Some(w)).unwrap();
        prop_assert_eq!(&one, &many);
        let streamed: Aggregate64 = aggregate(&u, npslab::enumerate::enumerate_tableaux(&p).unwrap()).unwrap();
        prop_assert_eq!(streamed.mode, Mode::Stream);
        prop_assert_eq!(streamed.total_steps, one.total_steps);
        prop_assert_eq!(streamed.drops, one.drops);
    }
}
