use std::collections::BTreeSet;

use blindsat_core::arith::{
    arithmetize_in, characteristic_in, factored_arithmetize, mask_to_point, ExponentVariant,
};
use blindsat_core::census::{first_true_count, q_sum, r_ratio};
use blindsat_core::dnf::{
    distribute, dnf_satisfying_assignment, Clause, CnfFormula, Literal, Satisfiability,
};
use blindsat_core::formula::{
    class_quasinorm, equivalent, irreducible_representative, is_irreducible,
};
use blindsat_core::search::{
    adversary_rows, adversary_single_row, visits_every_assignment, worst_case_formula,
    TowerAlgorithm,
};
use blindsat_core::{Connective, DnfFormula, Formula, HeuristicAlgorithm, SearchOrder, TruthTable};
use proptest::prelude::*;
use proptest::sample::subsequence;

fn formula(n: u32) -> impl Strategy<Value = Formula> {
    let leaf = prop_oneof![
        1 => Just(Formula::Top),
        1 => Just(Formula::Bottom),
        12 => (1..=n).prop_map(Formula::atom),
    ];
    leaf.prop_recursive(5, 40, 2, |inner| {
        prop_oneof![
            inner.clone().prop_map(Formula::not),
            (0..4usize, inner.clone(), inner)
                .prop_map(|(op, a, b)| { Formula::binary(Connective::ALL[op], a, b) }),
        ]
    })
}

fn order(n: u32) -> impl Strategy<Value = SearchOrder> {
    (
        Just((1..=n).collect::<Vec<u32>>()).prop_shuffle(),
        proptest::collection::vec(any::<bool>(), n as usize),
    )
        .prop_map(|(sigma, first)| SearchOrder::new(sigma, first).unwrap())
}

fn literal(n: u32) -> impl Strategy<Value = Literal> {
    (1..=n, any::<bool>()).prop_map(|(a, s)| Literal::new(a, s))
}

fn cnf(n: u32) -> impl Strategy<Value = CnfFormula> {
    let clause = proptest::collection::btree_set(literal(n), 1..=3)
        .prop_map(|s| Clause::new(s.into_iter().collect()).unwrap());
    proptest::collection::vec(clause, 1..=4).prop_map(|c| CnfFormula::new(c).unwrap())
}

fn dnf(n: u32) -> impl Strategy<Value = DnfFormula> {
    let disjunct = proptest::collection::vec(literal(n), 1..=4);
    proptest::collection::vec(disjunct, 1..=5).prop_map(|d| DnfFormula::new(d).unwrap())
}

fn full_atoms(n: u32) -> Vec<u32> {
    (1..=n).collect()
}

fn eval_mask(f: &Formula, mask: u64) -> bool {
    f.eval_with(&|a| mask >> (a - 1) & 1 == 1)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn print_parse_round_trip(f in formula(6)) {
        prop_assert_eq!(f.to_string().parse::<Formula>().unwrap(), f);
    }

    #[test]
    fn quasinorm_triangle(f in formula(6), g in formula(6)) {
        let joined = f.clone().and(g.clone()).quasinorm();
        let sum = f.quasinorm() + g.quasinorm();
        prop_assert!(joined <= sum);
        let shared = !f.atoms().is_disjoint(&g.atoms());
        prop_assert_eq!(joined < sum, shared);
    }

    #[test]
    fn equivalence_is_an_equivalence(f in formula(2), g in formula(2), h in formula(2)) {
        prop_assert!(equivalent(&f, &f).unwrap());
        prop_assert_eq!(equivalent(&f, &g).unwrap(), equivalent(&g, &f).unwrap());
        if equivalent(&f, &g).unwrap() && equivalent(&g, &h).unwrap() {
            prop_assert!(equivalent(&f, &h).unwrap());
        }
    }

    #[test]
    fn representative_is_a_fixed_point(f in formula(6)) {
        let rep = irreducible_representative(&f).unwrap();
        prop_assert!(equivalent(&rep, &f).unwrap());
        prop_assert_eq!(irreducible_representative(&rep).unwrap(), rep.clone());
        prop_assert!(is_irreducible(&rep).unwrap());
        prop_assert_eq!(rep.quasinorm(), class_quasinorm(&f).unwrap());
        prop_assert!(class_quasinorm(&f).unwrap() <= f.quasinorm());
    }

    #[test]
    fn arithmetization_is_sound(f in formula(8)) {
        let h = arithmetize_in(&f, 8).unwrap();
        for mask in 0..1u64 << 8 {
            let expected = eval_mask(&f, mask) as i32;
            prop_assert_eq!(h.eval_binary(mask), expected.into());
        }
    }

    #[test]
    fn characteristic_roots_are_models(f in formula(5)) {
        let g = characteristic_in(&f, 5).unwrap();
        let roots = g.binary_roots().unwrap();
        let models: BTreeSet<_> = (0..32u64)
            .filter(|m| eval_mask(&f, *m))
            .map(|m| mask_to_point(m, 5))
            .collect();
        prop_assert_eq!(roots, models);
    }

    #[test]
    fn substitution_matches_restriction(f in formula(4), from in 1u32..=4, to in 1u32..=4) {
        prop_assume!(from != to);
        let g = characteristic_in(&f, 4).unwrap();
        let s = g.substitute_equal(from, to).unwrap();
        for mask in 0..16u64 {
            let to_bit = mask >> (to - 1) & 1;
            let forced = (mask & !(1 << (from - 1))) | to_bit << (from - 1);
            prop_assert_eq!(s.eval_binary(mask), g.eval_binary(forced));
        }
    }

    #[test]
    fn factored_agrees_with_expanded(fs in proptest::collection::vec(formula(5), 1..4)) {
        let f = Formula::conjunction(fs);
        let fp = factored_arithmetize(&f).unwrap();
        let expanded = fp.expand().unwrap();
        let n = fp.nvars();
        prop_assert_eq!(&expanded, &arithmetize_in(&f, n).unwrap());
        if n > 0 {
            let sieve = fp.sieve_roots().unwrap().roots;
            prop_assert_eq!(sieve, expanded.binary_roots().unwrap());
        }
    }

    #[test]
    fn odd_exponents_agree(f in formula(6), var in 1u32..=6, k in 0u32..4) {
        let h = arithmetize_in(&f, 6).unwrap();
        let variant = ExponentVariant::for_variable(&h, var, 2 * k + 1);
        prop_assert!(h.exponent_variant_agrees(&variant, 0).unwrap());
        let even = ExponentVariant::for_variable(&h, var, 2 * k + 2);
        let has_var = h.terms().any(|(m, _)| m >> (var - 1) & 1 == 1);
        prop_assert_eq!(h.exponent_variant_agrees(&even, 0).is_err(), has_var);
    }

    #[test]
    fn explored_assignment_is_a_bijection(o in (1u32..=6).prop_flat_map(order)) {
        prop_assert!(visits_every_assignment(&o));
        let last = o.explored_mask(o.num_rows()).unwrap();
        for k in 1..=o.num_atoms() as u32 {
            prop_assert_eq!(last >> (k - 1) & 1 == 1, !o.first_value(k));
        }
    }

    #[test]
    fn single_row_adversary_is_exact(
        (o, m) in (1u32..=5).prop_flat_map(|n| (order(n), 1..=1u64 << n))
    ) {
        let f = adversary_single_row(&o, m).unwrap();
        prop_assert_eq!(o.run(&f).unwrap().first_success(), Some(m));
        let n = o.num_atoms() as u32;
        prop_assert_eq!(TruthTable::new(&f, &full_atoms(n)).unwrap().count_true(), 1);
        prop_assert!(is_irreducible(&f).unwrap());
    }

    #[test]
    fn multi_row_adversary_is_exact(
        (o, rows) in (1u32..=4).prop_flat_map(|n| {
            let all: Vec<u64> = (1..=1u64 << n).collect();
            (order(n), subsequence(all, 1..=(1usize << n)))
        })
    ) {
        let set: BTreeSet<u64> = rows.into_iter().collect();
        let f = adversary_rows(&o, &set).unwrap();
        let n = o.num_atoms() as u32;
        let table = TruthTable::new(&f, &full_atoms(n)).unwrap();
        prop_assert_eq!(table.count_true(), set.len() as u64);
        prop_assert_eq!(o.run(&f).unwrap().first_success(), set.first().copied());
    }

    #[test]
    fn worst_case_ignores_permutation(o in (1u32..=5).prop_flat_map(order)) {
        let f = worst_case_formula(&o);
        prop_assert_eq!(o.run(&f).unwrap().first_success(), Some(o.num_rows()));
    }

    #[test]
    fn tower_always_has_a_full_cost_adversary(
        (o, k) in (2u32..=4).prop_flat_map(|n| (order(n), 0..=(1usize << (n - 1))))
    ) {
        let tower = TowerAlgorithm::with_size(o.clone(), k).unwrap();
        let adv = tower.next_adversary().unwrap();
        prop_assert_eq!(tower.run(&adv).unwrap().rows_charged, o.num_rows());
    }

    #[test]
    fn heuristics_are_incomplete(
        (o, rows) in (1u32..=4).prop_flat_map(|n| {
            let all: Vec<u64> = (1..=1u64 << n).collect();
            (order(n), subsequence(all, 0..(1usize << n)))
        })
    ) {
        let n = o.num_atoms() as u32;
        let h = HeuristicAlgorithm::new(n, rows.into_iter().collect()).unwrap();
        let adv = h.adversary(&o).unwrap();
        prop_assert!(!TruthTable::new(&adv, &full_atoms(n)).unwrap().is_contradiction());
        prop_assert_eq!(h.run(&o, &adv).unwrap(), blindsat_core::search::HeuristicOutcome::Miss);
    }

    #[test]
    fn distribution_preserves_meaning(c in cnf(6)) {
        let d = distribute(&c).unwrap();
        let sizes: usize = c.clauses().iter().map(Clause::len).product();
        prop_assert_eq!(d.len(), sizes);
        prop_assert!(d.disjuncts().iter().all(|x| x.len() == c.clauses().len()));
        prop_assert!(equivalent(&d.to_formula(), &c.to_formula()).unwrap());
        match dnf_satisfying_assignment(&d) {
            Satisfiability::Satisfiable { assignment, .. } => {
                prop_assert!(c.to_formula().evaluate(&assignment).unwrap());
            }
            Satisfiability::Unsatisfiable => {
                prop_assert!(TruthTable::of(&c.to_formula()).unwrap().is_contradiction());
            }
        }
    }

    #[test]
    fn dnf_procedure_matches_oracle(d in dnf(8)) {
        let f = d.to_formula();
        let atoms = full_atoms(d.max_atom());
        let satisfiable = !TruthTable::new(&f, &atoms).unwrap().is_contradiction();
        match dnf_satisfying_assignment(&d) {
            Satisfiability::Satisfiable { assignment, .. } => {
                prop_assert!(satisfiable);
                prop_assert!(f.evaluate(&assignment).unwrap());
            }
            Satisfiability::Unsatisfiable => prop_assert!(!satisfiable),
        }
    }

    #[test]
    fn census_identities(n in 1u32..=6, m in 1u64..=64) {
        let u = 1u64 << n;
        prop_assume!(m <= u);
        let partial: blindsat_core::BigUint = (1..=m).map(|k| first_true_count(n, k).unwrap()).sum();
        prop_assert_eq!(q_sum(n, m).unwrap(), partial);
        prop_assert!(r_ratio(m) < r_ratio(m + 1));
    }
}
