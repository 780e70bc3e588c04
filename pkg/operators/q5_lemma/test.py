import unittest

from operators.q5_lemma import q5_lemma


class Test(unittest.TestCase):
    @classmethod
    def setUpClass(cls):
        # initialize operator
        param = {}
        q5_lemma.initialize(param)

    def test_every_coloring_is_caught(self):
        result = q5_lemma.run()
        self.assertTrue(result["passed"])
        self.assertEqual(result["checked"], 115975)
        self.assertEqual(result["case1"] + result["case2"], 115975)
        self.assertEqual(result["counterexamples"], [])

    def test_structure_counts(self):
        result = q5_lemma.run()
        self.assertEqual(len(result["points"]), 10)
        self.assertEqual(result["unit_pairs"], 30)
        self.assertEqual(result["unit_squares"], 15)

    def test_full_cube_search(self):
        q5_lemma.initialize({"full": True})
        try:
            result = q5_lemma.run()
        finally:
            q5_lemma.initialize({})
        self.assertTrue(result["passed"])
        self.assertEqual(len(result["points"]), 32)
        self.assertGreater(result["nodes"], 0)
