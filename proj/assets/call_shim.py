import ast
import sys

_semiforge_ns = {"__name__": "__semiforge_solution__"}
exec(compile({{user_code}}, "solution.py", "exec"), _semiforge_ns)
_semiforge_name = {{function_name}}
_semiforge_fn = _semiforge_ns.get(_semiforge_name)
if _semiforge_fn is None and isinstance(_semiforge_ns.get("Solution"), type):
    _semiforge_fn = getattr(_semiforge_ns["Solution"](), _semiforge_name, None)
if not callable(_semiforge_fn):
    sys.stderr.write("function not found: " + _semiforge_name + "\n")
    sys.exit(3)
_semiforge_args = ast.literal_eval({{args_literal}})
if isinstance(_semiforge_args, tuple):
    _semiforge_result = _semiforge_fn(*_semiforge_args)
else:
    _semiforge_result = _semiforge_fn(_semiforge_args)
if _semiforge_result is not None:
    sys.stdout.write(repr(_semiforge_result))
sys.stdout.flush()
