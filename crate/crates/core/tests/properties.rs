use std::collections::HashSet;

use proptest::prelude::*;

use atomwork::piercing::verify_solution;
use atomwork::pq::pairwise_disjoint;
use atomwork::{
    atoms_meeting, boolean_atoms, build_quadratic_witness, disjoint_sequence_greedy, dual_shatter,
    has_pq, max_disjoint, parse_family, point_signature, serialize_family, transversal_exact,
    transversal_greedy, verify_witness, PointSet, SetFamily, ShatterMode,
};

const BUDGET: u64 = 10_000_000;

fn family_strategy(max_sets: usize, max_points: usize) -> impl Strategy<Value = SetFamily> {
    (1..=max_points, 1..=max_sets).prop_flat_map(|(n, m)| {
        proptest::collection::vec(proptest::collection::vec(any::<bool>(), n), m).prop_map(
            move |rows| {
                SetFamily::all_base(
                    n,
                    rows.iter()
                        .map(|r| (0..n).filter(|&p| r[p]).collect::<Vec<_>>()),
                )
                .unwrap()
            },
        )
    })
}

fn nonempty_family(max_sets: usize, max_points: usize) -> impl Strategy<Value = SetFamily> {
    family_strategy(max_sets, max_points).prop_filter("no empty sets", |f| {
        f.sets().iter().all(|s| !s.members.is_empty())
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn atoms_partition_universe(f in family_strategy(6, 12), zero in any::<bool>()) {
        let sub: Vec<usize> = (0..f.len()).collect();
        let atoms = boolean_atoms(&f, &sub, zero).unwrap();
        let mut seen = PointSet::empty(f.universe_size());
        for (sig, cell) in &atoms.cells {
            prop_assert!(!cell.is_empty());
            prop_assert!(!seen.intersects(cell));
            seen.union_with(cell);
            for p in cell.iter() {
                prop_assert_eq!(&point_signature(&f, &sub, p).unwrap(), sig);
            }
        }
        if zero {
            prop_assert_eq!(seen.len(), f.universe_size());
        }
        let cap = (1usize << sub.len()).min(f.universe_size());
        prop_assert!(atoms.len() <= cap);
    }

    #[test]
    fn atoms_meeting_matches_direct_grouping(
        f in family_strategy(5, 12),
        mask in proptest::collection::vec(any::<bool>(), 12),
    ) {
        let b = f.point_set((0..f.universe_size()).filter(|&p| mask[p])).unwrap();
        let sub: Vec<usize> = (0..f.len()).collect();
        let count = atoms_meeting(&f, &sub, &b).unwrap();
        let direct: HashSet<_> = b.iter().map(|p| point_signature(&f, &sub, p).unwrap()).collect();
        prop_assert_eq!(count, direct.len());
        let total = boolean_atoms(&f, &sub, true).unwrap().len();
        prop_assert!(count <= total.min(b.len()));
    }

    #[test]
    fn shatter_monotone_and_greedy_below_exact(f in family_strategy(6, 10)) {
        let mut prev = 0;
        for n in 1..=f.len() {
            let exact = dual_shatter(&f, n, ShatterMode::Exact, BUDGET).unwrap();
            let greedy = dual_shatter(&f, n, ShatterMode::GreedyLowerBound, BUDGET).unwrap();
            prop_assert!(exact.value >= prev);
            prop_assert!(greedy.value <= exact.value);
            prop_assert!(exact.value <= (1usize << n).min(f.universe_size()));
            for r in [&exact, &greedy] {
                prop_assert_eq!(r.witness.len(), n);
                let atoms = boolean_atoms(&f, &r.witness, true).unwrap();
                prop_assert_eq!(atoms.len(), r.value);
            }
            prev = exact.value;
        }
    }

    #[test]
    fn packing_below_piercing(f in nonempty_family(7, 10)) {
        let nu = max_disjoint(&f, None);
        prop_assert!(pairwise_disjoint(&f, &nu.witness));
        let exact = transversal_exact(&f, BUDGET).unwrap();
        let greedy = transversal_greedy(&f).unwrap();
        prop_assert!(exact.optimal);
        prop_assert!(nu.size <= exact.solution.tau);
        prop_assert!(exact.solution.tau <= greedy.tau);
        prop_assert!(verify_solution(&f, &exact.solution).unwrap());
        prop_assert!(verify_solution(&f, &greedy).unwrap());
    }

    #[test]
    fn pq2_iff_packing(f in family_strategy(8, 10), p in 2usize..7) {
        let nu = max_disjoint(&f, None).size;
        let r = has_pq(&f, p, 2, BUDGET).unwrap();
        prop_assert_eq!(r.holds, nu < p);
        if let Some(v) = &r.violation {
            prop_assert_eq!(v.len(), p);
            prop_assert!(pairwise_disjoint(&f, v));
        }
        if p >= 3 && f.len() <= 7 {
            let g = has_pq(&f, p, 3, BUDGET).unwrap();
            prop_assert!(atomwork::pq::check_property_report(&f, &g).unwrap());
        }
    }

    #[test]
    fn adding_a_set_never_lowers_tau_or_nu(
        f in nonempty_family(6, 9),
        extra in proptest::collection::vec(any::<bool>(), 9),
    ) {
        let members = f.point_set((0..f.universe_size()).filter(|&p| extra[p])).unwrap();
        prop_assume!(!members.is_empty());
        let g = f.with_set("extra", members).unwrap();
        prop_assert!(max_disjoint(&g, None).size >= max_disjoint(&f, None).size);
        let tf = transversal_exact(&f, BUDGET).unwrap().solution.tau;
        let tg = transversal_exact(&g, BUDGET).unwrap().solution.tau;
        prop_assert!(tg >= tf);
    }

    #[test]
    fn greedy_sequence_is_disjoint_and_maximal(
        f in family_strategy(8, 12),
        mask in proptest::collection::vec(any::<bool>(), 12),
    ) {
        let b = f.point_set((0..f.universe_size()).filter(|&p| mask[p])).unwrap();
        let seq = disjoint_sequence_greedy(&f, &b);
        prop_assert!(pairwise_disjoint(&f, &seq));
        let mut covered = b.clone();
        for &i in &seq {
            prop_assert!(!f.members(i).intersects(&b));
            covered.union_with(f.members(i));
        }
        for i in (0..f.len()).filter(|i| !seq.contains(i)) {
            prop_assert!(f.members(i).intersects(&covered));
        }
    }

    #[test]
    fn structured_round_trip(f in family_strategy(5, 20), ext in proptest::collection::vec(any::<bool>(), 20)) {
        let g = SetFamily::new(
            f.universe_size(),
            (0..f.universe_size()).filter(|&p| ext[p]),
            f.sets().iter().map(|s| (s.name.clone(), s.members.iter())),
        ).unwrap();
        let text = serialize_family(&g);
        let back = parse_family(&text).unwrap();
        prop_assert_eq!(&back, &g);
        prop_assert_eq!(serialize_family(&back), text);
    }

    #[test]
    fn witness_chains_are_valid_and_deterministic(
        rows in proptest::collection::vec(proptest::collection::vec(any::<bool>(), 14), 1..8),
    ) {
        // points 0..8 base, 8..14 extension; target = all extension points
        let f = SetFamily::new(
            14,
            8..14,
            rows.iter().enumerate().map(|(k, r)| (format!("S{k}"), (0..14).filter(|&p| r[p]).collect::<Vec<_>>())),
        ).unwrap();
        let b = f.point_set(8..14).unwrap();
        let out = build_quadratic_witness(&f, &b, 4).unwrap();
        prop_assert_eq!(&out, &build_quadratic_witness(&f, &b, 4).unwrap());
        let chain = out.chain();
        let report = verify_witness(&f, &b, chain).unwrap();
        prop_assert!(report.all_passed(), "{:?}", report);
        for (i, &s) in chain.s_values.iter().enumerate() {
            prop_assert!(s > i + 1);
        }
        if !chain.is_empty() {
            prop_assert_eq!(chain.s_values[0], 2);
            let r = dual_shatter(&f, chain.len(), ShatterMode::Exact, BUDGET).unwrap();
            prop_assert!(r.value >= chain.len() * (chain.len() + 1) / 2);
        }
    }
}
