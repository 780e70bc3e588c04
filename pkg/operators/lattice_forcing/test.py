import unittest

from operators.lattice_forcing import lattice_forcing


class Test(unittest.TestCase):
    @classmethod
    def setUpClass(cls):
        # initialize operator
        param = {"length": 11, "colors": 3}
        lattice_forcing.initialize(param)

    def test_seed_color_spreads_along_the_line(self):
        result = lattice_forcing.run()
        self.assertTrue(result["passed"])
        self.assertEqual(result["line_constraints"], 10)
        self.assertEqual(result["line"]["singleton_fraction"], 1.0)
        self.assertEqual(result["line"]["rounds"], 11)

    def test_bisector_chain_is_forced(self):
        result = lattice_forcing.run()
        self.assertEqual(result["chain_forced"], result["chain_points"])
        self.assertEqual(result["chain_points"], 13)
