import unittest

from operators.block_coloring import block_coloring


class Test(unittest.TestCase):
    @classmethod
    def setUpClass(cls):
        # initialize operator
        param = {"trials": 100000, "seed": 0}
        block_coloring.initialize(param)

    def test_rectangle_rule(self):
        result = block_coloring.run()
        self.assertEqual(result["rule"]["variant"], "Block")
        self.assertEqual(result["rule"]["num_colors"], 3)
        self.assertAlmostEqual(result["rule"]["a"], 1.0, places=9)
        self.assertAlmostEqual(result["target"]["diameter"], 2.0, places=9)
        self.assertTrue(result["target"]["box_width"]["exact"])

    def test_no_mono_rectangle_no_rainbow_triangle(self):
        result = block_coloring.run()
        self.assertTrue(result["passed"])
        self.assertEqual(result["report"]["mono"]["trials"], 100000)
        self.assertEqual(result["report"]["rainbow"]["trials"], 100000)
        self.assertLessEqual(result["pattern_diameter"], 1.0)
