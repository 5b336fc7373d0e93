use cellform::io::{parse_incidence, write_incidence};
use cellform::oracle::brute_force_optimum;
use cellform::{
    build_dendrogram, efficacy, improve, initial_assignment, similarity_matrix, solve,
    CellConfiguration, ImprovementParams, IncidenceMatrix, Ratio, SolveParams, StopReason,
};
use proptest::prelude::*;

fn matrix(max_m: usize, max_n: usize) -> impl Strategy<Value = IncidenceMatrix> {
    (2..=max_m, 2..=max_n)
        .prop_flat_map(|(m, n)| {
            proptest::collection::vec(proptest::collection::vec(any::<bool>(), n), m)
        })
        .prop_filter_map("no empty row or column", |rows| {
            IncidenceMatrix::from_rows(&rows).ok()
        })
}

/// Matrix plus an arbitrary valid configuration of it.
fn instance(
    max_m: usize,
    max_n: usize,
) -> impl Strategy<Value = (IncidenceMatrix, CellConfiguration)> {
    matrix(max_m, max_n)
        .prop_flat_map(|mx| {
            let (m, n) = (mx.machine_count(), mx.part_count());
            (1..=m).prop_flat_map(move |k| {
                (
                    Just(mx.clone()),
                    Just(k),
                    proptest::sample::subsequence((0..m).collect::<Vec<_>>(), k),
                    proptest::collection::vec(0..k, m),
                    proptest::collection::vec(0..k, n),
                )
            })
        })
        .prop_map(|(mx, k, seeds, mut machine_cell, part_cell)| {
            // one seed machine per cell keeps every cell non-empty
            for (c, &i) in seeds.iter().enumerate() {
                machine_cell[i] = c;
            }
            (mx, CellConfiguration::new(k, machine_cell, part_cell))
        })
}

fn invert(p: &[usize]) -> Vec<usize> {
    let mut inv = vec![0; p.len()];
    for (new, &old) in p.iter().enumerate() {
        inv[old] = new;
    }
    inv
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn efficacy_is_a_ratio_in_unit_interval((m, cfg) in instance(6, 8)) {
        let b = efficacy(&m, &cfg).unwrap();
        prop_assert!(b.efficacy <= Ratio::ONE);
        prop_assert_eq!(b.efficacy == Ratio::ONE, b.exceptional == 0 && b.voids == 0);
        let inside = (0..m.machine_count())
            .flat_map(|i| (0..m.part_count()).map(move |j| (i, j)))
            .filter(|&(i, j)| m.get(i, j) && cfg.machine_cell(i) == cfg.part_cell(j))
            .count();
        prop_assert_eq!(b.exceptional + inside, b.total_ones);
        prop_assert_eq!(b.efficacy, Ratio::new(inside as u64, (b.total_ones + b.voids) as u64));
    }

    #[test]
    fn efficacy_survives_relabeling(
        (m, cfg) in instance(6, 8),
        rows in any::<proptest::sample::Index>(),
        cols in any::<proptest::sample::Index>(),
        cells in any::<proptest::sample::Index>(),
    ) {
        let rotate = |len: usize, by: &proptest::sample::Index| -> Vec<usize> {
            let s = by.index(len);
            (0..len).map(|i| (i + s) % len).rev().collect()
        };
        let mo = rotate(m.machine_count(), &rows);
        let po = rotate(m.part_count(), &cols);
        let co = invert(&rotate(cfg.cell_count(), &cells));
        let pm = m.permuted(&mo, &po);
        let relabeled = CellConfiguration::new(
            cfg.cell_count(),
            mo.iter().map(|&i| co[cfg.machine_cell(i)]).collect(),
            po.iter().map(|&j| co[cfg.part_cell(j)]).collect(),
        );
        prop_assert_eq!(efficacy(&m, &cfg).unwrap(), efficacy(&pm, &relabeled).unwrap());
    }

    #[test]
    fn single_move_changes_only_its_column(
        (m, cfg) in instance(6, 8),
        part in any::<proptest::sample::Index>(),
        to in any::<proptest::sample::Index>(),
    ) {
        let j = part.index(m.part_count());
        let c = to.index(cfg.cell_count());
        let before = efficacy(&m, &cfg).unwrap();
        let mut parts = cfg.part_cells().to_vec();
        let old = parts[j];
        parts[j] = c;
        let moved = CellConfiguration::new(cfg.cell_count(), cfg.machine_cells().to_vec(), parts);
        let after = efficacy(&m, &moved).unwrap();
        let (mut de, mut dv) = (0i64, 0i64);
        for i in 0..m.machine_count() {
            let mc = cfg.machine_cell(i);
            let (was_in, now_in) = (mc == old, mc == c);
            if m.get(i, j) {
                de += i64::from(!now_in) - i64::from(!was_in);
            } else {
                dv += i64::from(now_in) - i64::from(was_in);
            }
        }
        prop_assert_eq!(after.exceptional as i64 - before.exceptional as i64, de);
        prop_assert_eq!(after.voids as i64 - before.voids as i64, dv);
    }

    #[test]
    fn similarity_structure(m in matrix(6, 8)) {
        let s = similarity_matrix(&m);
        for i in 0..m.machine_count() {
            prop_assert_eq!(s.get(i, i), 1.0);
            for j in 0..m.machine_count() {
                let v = s.get(i, j);
                prop_assert_eq!(v, s.get(j, i));
                prop_assert!((0.0..=1.0).contains(&v));
                prop_assert_eq!(v == 1.0, m.row(i) == m.row(j));
                let disjoint = m.row(i).iter().zip(m.row(j)).all(|(&a, &b)| !(a && b));
                prop_assert_eq!(v == 0.0, disjoint);
            }
        }
        let order: Vec<usize> = (0..m.part_count()).rev().collect();
        let machines: Vec<usize> = (0..m.machine_count()).collect();
        prop_assert_eq!(similarity_matrix(&m.permuted(&machines, &order)), s);
    }

    #[test]
    fn dendrogram_cuts_are_nested_partitions(m in matrix(8, 8)) {
        let sim = similarity_matrix(&m);
        let tree = build_dendrogram(&sim);
        let n = m.machine_count();
        prop_assert_eq!(tree.merges().len(), n - 1);
        prop_assert!((tree.merges()[0].level - sim.max_off_diagonal()).abs() < 1e-12);
        prop_assert_eq!(&tree, &build_dendrogram(&sim));

        let mut children: Vec<usize> = tree.merges().iter().flat_map(|mg| [mg.left, mg.right]).collect();
        children.sort_unstable();
        prop_assert_eq!(children, (1..2 * n - 1).collect::<Vec<_>>());

        let mut coarser: Option<Vec<Vec<usize>>> = None;
        for k in 1..=n {
            let cells = tree.cut(k).unwrap();
            prop_assert_eq!(cells.len(), k);
            let mut all: Vec<usize> = cells.concat();
            all.sort_unstable();
            prop_assert_eq!(all, (0..n).collect::<Vec<_>>());
            if let Some(parent) = &coarser {
                for cell in &cells {
                    prop_assert!(parent.iter().any(|p| cell.iter().all(|i| p.contains(i))));
                }
            }
            coarser = Some(cells);
        }
    }

    #[test]
    fn improvement_is_monotone_and_keeps_machines(
        (m, cfg) in instance(6, 8),
        max_iterations in 1usize..40,
    ) {
        let params = ImprovementParams::new(max_iterations, max_iterations.min(5)).unwrap();
        let start = efficacy(&m, &cfg).unwrap().efficacy;
        let (out, trace) = improve(&m, &cfg, &params).unwrap();
        prop_assert!(out.validate(&m).is_ok());
        prop_assert_eq!(out.machine_cells(), cfg.machine_cells());
        prop_assert!(trace.iterations() <= max_iterations);
        let mut last = start;
        for s in trace.accepted() {
            prop_assert!(s.efficacy > last);
            last = s.efficacy;
        }
        let fin = efficacy(&m, &out).unwrap().efficacy;
        prop_assert_eq!(fin, trace.final_efficacy());
        prop_assert!(fin >= start);
        if trace.stop == StopReason::LocalOptimum {
            for j in 0..m.part_count() {
                for c in 0..out.cell_count() {
                    let mut parts = out.part_cells().to_vec();
                    parts[j] = c;
                    let moved = CellConfiguration::new(out.cell_count(), out.machine_cells().to_vec(), parts);
                    prop_assert!(efficacy(&m, &moved).unwrap().efficacy <= fin);
                }
            }
        }
    }

    #[test]
    fn improved_assignment_is_bounded_by_partition_optimum(m in matrix(4, 4)) {
        // fixed two-cell machine partition from the dendrogram
        let tree = build_dendrogram(&similarity_matrix(&m));
        let cells = tree.cut(2).unwrap();
        let start = initial_assignment(&m, &cells).unwrap();
        let (out, _) = improve(&m, &start, &ImprovementParams::default()).unwrap();
        let mut best = Ratio::ZERO;
        let k = cells.len();
        let n = m.part_count();
        for code in 0..k.pow(n as u32) {
            let parts: Vec<usize> = (0..n).map(|j| code / k.pow(j as u32) % k).collect();
            let cfg = CellConfiguration::new(k, out.machine_cells().to_vec(), parts);
            best = best.max(efficacy(&m, &cfg).unwrap().efficacy);
        }
        prop_assert!(efficacy(&m, &out).unwrap().efficacy <= best);
    }

    #[test]
    fn solve_is_self_consistent(m in matrix(6, 8)) {
        let report = solve(&m, &SolveParams::default()).unwrap();
        prop_assert_eq!(efficacy(&m, &report.best).unwrap(), report.breakdown);
        let pool: Vec<_> = report.per_cut.iter().filter(|c| report.size_rule_relaxed || c.eligible).collect();
        prop_assert_eq!(report.breakdown.efficacy, pool.iter().map(|c| c.efficacy).max().unwrap());
        let fixed = solve(&m, &SolveParams { fixed_k: Some(report.best_k), ..Default::default() }).unwrap();
        prop_assert_eq!(fixed.best, report.best);
    }

    #[test]
    fn solve_never_beats_exhaustive_optimum(m in matrix(4, 6)) {
        let report = solve(&m, &SolveParams::default()).unwrap();
        let levels = SolveParams::default().cut_levels(m.machine_count()).unwrap();
        let oracle = brute_force_optimum(&m, levels).unwrap();
        prop_assert!(report.breakdown.efficacy <= oracle.optimum_efficacy);
    }

    #[test]
    fn incidence_text_round_trip(m in matrix(8, 10)) {
        prop_assert_eq!(parse_incidence(&write_incidence(&m)).unwrap(), m);
    }
}
