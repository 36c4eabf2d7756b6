"""Run one solution's tests and print the outcome of each as JSON.

    python3 run_tests.py SOLUTION.py TESTS.py
"""
import json
import sys


def main(solution, tests):
    ns = {"__name__": "solution"}
    with open(solution, encoding="utf-8") as f:
        exec(compile(f.read(), solution, "exec"), ns)
    with open(tests, encoding="utf-8") as f:
        exec(compile(f.read(), tests, "exec"), ns)
    results = {}
    for name in sorted(k for k in ns if k.startswith("test_")):
        try:
            ns[name]()
            results[name] = "pass"
        except AssertionError:
            results[name] = "fail"
        except Exception as err:
            results[name] = "error:" + type(err).__name__
    print(json.dumps(results, sort_keys=True))


if __name__ == "__main__":
    main(sys.argv[1], sys.argv[2])
