import unittest

from operators.triple_unsat import triple_unsat


class Test(unittest.TestCase):
    @classmethod
    def setUpClass(cls):
        # initialize operator
        param = {"N": 100}
        triple_unsat.initialize(param)

    def test_proof_offsets_are_unsat(self):
        result = triple_unsat.run()
        self.assertTrue(result["passed"])
        self.assertEqual(result["csp"]["status"], "unsat")
        self.assertIsNone(result["csp"]["witness"])
        self.assertEqual(result["csp"]["offsets"], 22)

    def test_opening_triples_realize(self):
        result = triple_unsat.run()
        triples = sorted(tuple(row["triple"]) for row in result["opening_triples"])
        self.assertEqual(triples, [("100", "100", "102"), ("101", "100", "101"), ("102", "101", "102")])
        for row in result["opening_triples"]:
            self.assertTrue(row["potential"])
            self.assertLess(row["norm_error"], 1e-9)

    def test_integer_offsets_are_satisfiable(self):
        triple_unsat.initialize({"offsets": [0, 1, 2, 3, 4, 5, 6]})
        try:
            result = triple_unsat.run()
        finally:
            triple_unsat.initialize({"N": 100})
        self.assertFalse(result["passed"])
        self.assertEqual(result["csp"]["status"], "sat")
