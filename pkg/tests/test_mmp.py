#!/usr/bin/env python3
"""Tests for the MMP chain enumerator and the closed-form bounds"""
import dataclasses
import os
import random
import unittest

from fanodefect.consts import STATUSES
from fanodefect.exceptions import InputError, InvalidStartError
from fanodefect import mmp
from fanodefect.mmp import (
    ContractionStep,
    MmpState,
    closed_form,
    closed_form_index2,
    defect_from_betti,
    e1_menu,
    e1_pairs,
    enumerate_bound,
    lemma11_profile,
    legal_steps,
    quadric_cap,
    start_state,
)

SEED = int(os.environ.get('FANODEFECT_TEST_SEED', 0))

# pylint: disable=missing-function-docstring

class TestIntersectionNumbers(unittest.TestCase):
    def test_profile(self):
        self.assertEqual(lemma11_profile(22, 1, 0), (18, 3, -2, 1))
        self.assertEqual(lemma11_profile(10, 5, 2), (2, 3, 2, -7))
        for d in (8, 22):
            with self.subTest(d=d):
                # Conic and elliptic curve of degree 2
                self.assertEqual(lemma11_profile(d, 2, 0), (d - 6, 4, -2, 0))
                self.assertEqual(lemma11_profile(d, 2, 1), (d - 4, 2, 0, -2))

    def test_profile_identities(self):
        rng = random.Random(SEED)
        for _ in range(200):
            target, a_gamma, p_a = rng.randint(1, 64), rng.randint(1, 40), rng.randint(0, 20)
            a3, a2e, ae2, _ = lemma11_profile(target, a_gamma, p_a)
            with self.subTest(target=target, a_gamma=a_gamma, p_a=p_a):
                self.assertEqual(a2e + ae2, a_gamma)
                self.assertEqual(target - a3, 2 * a_gamma + 2 - 2 * p_a)
                self.assertEqual(target - a3, ContractionStep.e1(a_gamma, p_a).delta)

    def test_e1_pairs(self):
        pairs = set(e1_pairs(pa_cap=3, deg_cap=6))
        # A^2.E = 2 is still admissible
        self.assertIn((2, 1), pairs)
        self.assertIn((1, 0), pairs)
        self.assertNotIn((1, 1), pairs)
        for a_gamma, p_a in pairs:
            self.assertGreaterEqual(lemma11_profile(0, a_gamma, p_a)[1], 2)
            self.assertGreaterEqual(ContractionStep.e1(a_gamma, p_a).delta, 4)

    def test_e1_menu(self):
        menu = e1_menu()
        deltas = [step.delta for step in menu]
        self.assertEqual(deltas, sorted(set(deltas)))
        self.assertEqual(deltas[0], 4)
        self.assertTrue(all(delta % 2 == 0 for delta in deltas))
        # The smallest genus wins for each increase
        self.assertEqual((menu[0].a_gamma, menu[0].p_a), (1, 0))
        for step in menu:
            self.assertGreaterEqual(lemma11_profile(0, step.a_gamma, step.p_a)[1], 2)

    def test_step_deltas(self):
        self.assertEqual(ContractionStep.e1(3, 1).delta, 6)
        self.assertEqual(ContractionStep.e2().delta, 8)
        self.assertEqual(ContractionStep.quadric_to_point().delta, 2)
        self.assertEqual(ContractionStep.quadric_to_curve(2).delta, 6)
        self.assertFalse(ContractionStep.flop().divisorial)

class TestLegalSteps(unittest.TestCase):
    def test_degrees_increase(self):
        state = MmpState(4, 1, 1)
        steps = legal_steps(state)
        self.assertTrue(steps)
        for step, nxt in steps:
            self.assertGreater(nxt.degree, state.degree)
            self.assertTrue(nxt.is_valid())
            self.assertEqual(nxt.degree - state.degree, step.delta)

    def test_quadric_steps(self):
        kinds = {step.kind for step, _ in legal_steps(MmpState(4, 1, 1))}
        self.assertIn('QuadricToPoint', kinds)
        kinds = {step.kind for step, _ in legal_steps(MmpState(4, 1, 1), no_quadric=True)}
        self.assertNotIn('QuadricToPoint', kinds)
        self.assertNotIn('QuadricToPoint', {step.kind for step, _ in legal_steps(MmpState(4, 1, 0))})

    def test_index_two(self):
        steps = legal_steps(MmpState(16, 2))
        self.assertEqual({step.kind for step, _ in steps}, {'E2'})
        self.assertEqual([nxt.degree for _, nxt in steps], [24])
        self.assertEqual(legal_steps(MmpState(54, 3)), [])

    def test_successors_of_quartic(self):
        successors = {(nxt.degree, nxt.index) for _, nxt in legal_steps(MmpState(4, 1, 0), no_quadric=True)}
        degrees = {degree for degree, _ in successors}
        self.assertIn((8, 1), successors)
        self.assertIn((8, 2), successors)
        self.assertTrue({12, 16, 22} <= degrees)
        # An increase of 2 needs a quadric
        self.assertNotIn(6, degrees)
        with_quadric = legal_steps(MmpState(4, 1, 1))
        self.assertIn((6, 'QuadricToPoint'), {(nxt.degree, step.kind) for step, nxt in with_quadric})

    def test_no_successors_of_index_four(self):
        self.assertEqual(legal_steps(MmpState(64, 4)), [])

    def test_end_only_states(self):
        steps = legal_steps(MmpState(40, 2))
        self.assertEqual([(nxt.degree, nxt.rank_one) for _, nxt in steps], [(48, False)])
        self.assertEqual(legal_steps(steps[0][1]), [])

class TestEnumerateBound(unittest.TestCase):
    def test_quartic_without_quadrics(self):
        certificate = enumerate_bound(genus=3, no_quadric=True)
        self.assertEqual(certificate.cl_rank_bound, 9)
        self.assertEqual(certificate.defect_bound, 8)
        self.assertTrue(certificate.closed_form_agrees)
        self.assertIn('Cl rank <= 9', certificate.format())

    def test_quartic(self):
        certificate = enumerate_bound(genus=3)
        self.assertEqual(certificate.cl_rank_bound, 10)
        self.assertTrue(certificate.closed_form_agrees)

    def test_closed_forms_by_genus(self):
        for genus in mmp.GENERA:
            with self.subTest(genus=genus):
                certificate = enumerate_bound(genus=genus, no_quadric=True)
                self.assertEqual(certificate.defect_bound, closed_form(genus, 'cor1'))
                certificate = enumerate_bound(genus=genus)
                variant = 'cor2' if quadric_cap(genus) else 'cor1'
                self.assertEqual(certificate.defect_bound, closed_form(genus, variant))

    def test_index_two(self):
        for h3 in range(1, 6):
            with self.subTest(h3=h3):
                certificate = enumerate_bound(index=2, degree=8 * h3)
                self.assertEqual(certificate.picard_rank_bound, 8 - h3)
                self.assertTrue(certificate.closed_form_agrees)
                self.assertEqual(mmp.max_disjoint_planes_index2(h3), 7 - h3)

    def test_certificate_chain(self):
        certificate = enumerate_bound(genus=3, no_quadric=True)
        state = certificate.start
        for step, nxt in certificate.chain:
            self.assertEqual(nxt.degree, state.degree + step.delta)
            state = nxt
        self.assertEqual(certificate.picard_rank_bound, certificate.divisorial_steps + certificate.end.rho)
        document = certificate.to_dict()
        self.assertEqual(len(document['chain']), len(certificate.chain))
        self.assertEqual(document['cl_rank_bound'], 9)

    def test_flops_change_nothing(self):
        certificate = enumerate_bound(genus=3, no_quadric=True)
        self.assertTrue(all(step.divisorial for step, _ in certificate.chain))
        flop = ContractionStep.flop()
        self.assertEqual(flop.delta, 0)
        state = certificate.chain[0][1]
        chain = certificate.chain[:1] + ((flop, state),) + certificate.chain[1:]
        flopped = dataclasses.replace(certificate, chain=chain)
        self.assertEqual(flopped.divisorial_steps, certificate.divisorial_steps)
        self.assertEqual(flopped.final_state, certificate.final_state)

    def test_chains_stay_small(self):
        starts = [{'genus': g, 'no_quadric': nq} for g in mmp.GENERA for nq in (False, True)]
        starts += [{'index': 2, 'degree': 8 * h3} for h3 in range(1, 6)]
        for start in starts:
            with self.subTest(**start):
                certificate = enumerate_bound(**start)
                self.assertLessEqual(certificate.cl_rank_bound, 16)
                self.assertLessEqual(len(certificate.chain), mmp.MAX_CHAIN_LENGTH)
                degrees = [certificate.start.degree] + [state.degree for _, state in certificate.chain]
                self.assertEqual(degrees, sorted(set(degrees)))

    def test_invalid_start(self):
        with self.assertRaises(InvalidStartError):
            enumerate_bound(genus=11)
        with self.assertRaises(InvalidStartError):
            enumerate_bound(index=2, degree=12)
        with self.assertRaises(InvalidStartError):
            start_state()
        with self.assertRaises(InputError):
            enumerate_bound(genus=3, no_plane=False)

    def test_cap(self):
        self.assertEqual(start_state(genus=3).quadrics_remaining, 1)
        self.assertEqual(start_state(genus=3, cap=0).quadrics_remaining, 0)
        self.assertEqual(start_state(genus=3, no_quadric=True).quadrics_remaining, 0)
        self.assertEqual(quadric_cap(10), 0)
        self.assertEqual(quadric_cap(8), 2)

class TestClosedForms(unittest.TestCase):
    def test_closed_form(self):
        self.assertEqual(closed_form(3), 8)
        self.assertEqual(closed_form(3, 'cor2'), 9)
        self.assertEqual(closed_form(12), 4)
        with self.assertRaises(InputError):
            closed_form(11)
        with self.assertRaises(InputError):
            closed_form(3, 'cor3')

    def test_index2(self):
        self.assertEqual(closed_form_index2(1), 7)
        with self.assertRaises(InputError):
            closed_form_index2(6)

    def test_burkhardt_defect(self):
        # Small resolution of the Burkhardt quartic has b2 = 61
        self.assertEqual(defect_from_betti(61, 45), 15)

    def test_quartic_class_bound(self):
        self.assertEqual(mmp.quartic_class_bound(True), 16)
        self.assertEqual(mmp.quartic_class_bound(False), 10)
        self.assertEqual(mmp.quartic_class_bound(False, contains_quadric=False), 9)

    def test_reference_table(self):
        table = mmp.reference_table()
        self.assertEqual(table[3], {'bound': 15, 'status': 'proved'})
        self.assertEqual(table[2]['status'], 'conjectural')
        self.assertIsNone(table[12]['bound'])
        self.assertEqual(sorted(table), list(mmp.GENERA))

    def test_reference_table_is_a_copy(self):
        table = mmp.reference_table()
        table[3]['bound'] = 0
        del table[2]
        fresh = mmp.reference_table()
        self.assertEqual(fresh[3]['bound'], 15)
        self.assertIn(2, fresh)
        self.assertTrue(all(entry['status'] in STATUSES for entry in fresh.values()))

if __name__ == '__main__':
    unittest.main()
