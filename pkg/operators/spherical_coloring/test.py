import unittest

from operators.spherical_coloring import spherical_coloring


class Test(unittest.TestCase):
    @classmethod
    def setUpClass(cls):
        # initialize operator
        param = {"m": 4}
        spherical_coloring.initialize(param)

    def test_mod_four_avoids_monochromatic_lines(self):
        result = spherical_coloring.run()
        self.assertTrue(result["spherical"])
        self.assertTrue(result["mono"]["clean"])
        self.assertEqual(result["mono"]["trials"], 100000)

    def test_rainbow_line_is_found(self):
        result = spherical_coloring.run()
        self.assertFalse(result["rainbow"]["clean"])
        colors = result["rainbow"]["witness"]["colors"]
        self.assertEqual(len(set(colors)), 3)
        self.assertTrue(result["passed"])
