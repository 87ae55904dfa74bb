"""Command-line front end: decompose dual matrices from files, classify 2x2
transforms, and independently re-verify result documents.

Exit codes: 0 success, 2 parse error, 3 precondition violation,
4 verification failure.
"""

from __future__ import annotations

import argparse
import sys

import numpy as np

from . import fileformat
from .errors import (
    DegenerateInput,
    DimensionMismatch,
    DualLinAlgError,
    NotHermitian,
    NotInvertible,
    NotSquare,
    NotSymmetric,
)
from .fileformat import ParseError
from .laguerre import LaguerreTransform, classify_transform
from .linalg import DualMatrix, adjoint, structure_residual
from .svd import penrose_residuals, pinv_t, svd, t_polar

KINDS = ("t-svd", "star-svd", "t-spectral", "star-spectral", "t-polar", "pinv")

_PRECONDITION_ERRORS = (
    NotSquare,
    NotSymmetric,
    NotHermitian,
    NotInvertible,
    DimensionMismatch,
    DegenerateInput,
)


def _load_matrix(path: str) -> DualMatrix:
    try:
        with open(path) as f:
            text = f.read()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}") from exc
    return fileformat.parse_matrix(text)


def _require_square(m: DualMatrix):
    if m.shape[0] != m.shape[1]:
        raise NotSquare(f"decomposition commands need a square matrix: {m.shape}")


def _diag_summary(diag) -> dict:
    return {"diag": [[d.std, d.inf] for d in diag]}


def _block_summary(blocks) -> dict:
    return {
        "blocks": [
            {"size": b.size, "sigma": float(b.sigma), "sigma_prime": float(b.sigma_prime)}
            for b in blocks
        ]
    }


def build_result(m: DualMatrix, kind: str, tol: float, cluster_tol: float) -> dict:
    _require_square(m)
    doc: dict = {"kind": kind, "rows": m.shape[0], "cols": m.shape[1], "outcome": "ok"}

    if kind in ("t-svd", "star-svd"):
        flavor = "T" if kind == "t-svd" else "star"
        r = svd(m, flavor, tol, cluster_tol)
        struct = "t_orthogonal" if flavor == "T" else "unitary"
        doc["factors"] = {
            "u": fileformat.matrix_to_obj(r.u),
            "sigma": fileformat.matrix_to_obj(r.sigma),
            "v": fileformat.matrix_to_obj(r.v),
        }
        doc["summary"] = _diag_summary(r.diag) if flavor == "T" else _block_summary(r.blocks)
        doc["residuals"] = {
            "reconstruction": r.residual,
            "u_structure": structure_residual(r.u, struct),
            "v_structure": structure_residual(r.v, struct),
        }
    elif kind in ("t-spectral", "star-spectral"):
        from .spectral import star_spectral, t_spectral

        if kind == "t-spectral":
            dec = t_spectral(m, tol, cluster_tol)
            struct = "t_orthogonal"
            doc["summary"] = _diag_summary(dec.diag)
        else:
            dec = star_spectral(m, tol, cluster_tol)
            struct = "unitary"
            doc["summary"] = _block_summary(dec.blocks)
        sigma = dec.sigma_matrix()
        recon = dec.v @ sigma @ adjoint(dec.v, dec.flavor)
        doc["factors"] = {
            "v": fileformat.matrix_to_obj(dec.v),
            "sigma": fileformat.matrix_to_obj(sigma),
        }
        doc["residuals"] = {
            "reconstruction": (recon - m).norm(),
            "v_structure": structure_residual(dec.v, struct),
        }
    elif kind == "t-polar":
        pr = t_polar(m)
        doc["factors"] = {
            "u": fileformat.matrix_to_obj(pr.u),
            "p": fileformat.matrix_to_obj(pr.p),
        }
        doc["residuals"] = {
            "reconstruction": (pr.u @ pr.p - m).norm(),
            "u_structure": structure_residual(pr.u, "t_orthogonal"),
            "p_symmetry": structure_residual(pr.p, "symmetric"),
        }
    elif kind == "pinv":
        x = pinv_t(m, tol)
        if x is None:
            doc["outcome"] = "nonexistent"
            doc["factors"] = {}
            doc["residuals"] = {}
        else:
            doc["factors"] = {"pinv": fileformat.matrix_to_obj(x)}
            doc["residuals"] = {
                f"penrose_{name}": val for name, val in penrose_residuals(m, x).items()
            }
    else:
        raise ParseError(f"unknown kind {kind!r}")
    return doc


def cmd_decompose(args) -> int:
    m = _load_matrix(args.input)
    doc = build_result(m, args.kind, args.tol, args.cluster_tol)
    text = fileformat.dumps(doc)
    if args.output:
        with open(args.output, "w") as f:
            f.write(text)
    else:
        sys.stdout.write(text)
    return 0


def cmd_classify(args) -> int:
    m = _load_matrix(args.input)
    if m.shape != (2, 2):
        raise NotSquare(f"classify needs a 2x2 matrix, got {m.shape}")
    c = classify_transform(LaguerreTransform(m))
    residual = (c.reconstruct() - m).norm()
    if c.form == 1:
        print("form=1")
        print(f"sigma=[{c.sigma[0]:.17g}, {c.sigma[1]:.17g}]")
    else:
        print("form=2")
        print(f"sigma={c.sigma:.17g}")
        print(f"sigma_prime={c.sigma_prime:.17g}")
    print(f"residual={residual:.17g}")
    return 0


def _get_factor(doc, name) -> DualMatrix:
    try:
        return fileformat.obj_to_matrix(doc["factors"][name])
    except (KeyError, TypeError) as exc:
        raise ParseError(f"result document is missing factor {name!r}") from exc


def _star_sigma_form_residual(sigma: DualMatrix) -> float:
    """Departure of sigma from the legal star block pattern: real diagonal
    standard part, infinitesimal part skew with support on the diagonal and
    the adjacent off-diagonals."""
    n = sigma.shape[0]
    worst = 0.0
    for i in range(n):
        for j in range(n):
            if i != j:
                worst = max(worst, abs(sigma.std[i, j]))
            if abs(i - j) >= 2:
                worst = max(worst, abs(sigma.inf[i, j]))
            if i != j:
                worst = max(worst, abs(sigma.inf[i, j] + sigma.inf[j, i]))
    return worst


def _offdiag_residual(sigma: DualMatrix) -> float:
    mask = ~np.eye(sigma.shape[0], dtype=bool)
    if not mask.any():
        return 0.0
    return max(
        float(np.abs(sigma.std[mask]).max()), float(np.abs(sigma.inf[mask]).max())
    )


def _verify(m: DualMatrix, doc: dict, tol: float):
    """Yield (name, residual, limit) triples for every invariant of the
    result document."""
    kind = doc.get("kind")
    scale = max(1.0, m.norm())
    lim = tol * scale

    if kind in ("t-svd", "star-svd"):
        flavor = "T" if kind == "t-svd" else "star"
        struct = "t_orthogonal" if flavor == "T" else "unitary"
        u = _get_factor(doc, "u")
        sigma = _get_factor(doc, "sigma")
        v = _get_factor(doc, "v")
        yield "u_structure", structure_residual(u, struct), lim
        yield "v_structure", structure_residual(v, struct), lim
        if flavor == "T":
            yield "sigma_diagonal", _offdiag_residual(sigma), lim
        else:
            yield "sigma_block_form", _star_sigma_form_residual(sigma), lim
        recon = u @ sigma @ adjoint(v, flavor)
        yield "reconstruction", (recon - m).norm(), lim
    elif kind in ("t-spectral", "star-spectral"):
        flavor = "T" if kind == "t-spectral" else "star"
        struct = "t_orthogonal" if flavor == "T" else "unitary"
        v = _get_factor(doc, "v")
        sigma = _get_factor(doc, "sigma")
        yield "v_structure", structure_residual(v, struct), lim
        if flavor == "T":
            yield "sigma_diagonal", _offdiag_residual(sigma), lim
        else:
            yield "sigma_hermitian", structure_residual(sigma, "hermitian"), lim
            yield "sigma_block_form", _star_sigma_form_residual(sigma), lim
        recon = v @ sigma @ adjoint(v, flavor)
        yield "reconstruction", (recon - m).norm(), lim
    elif kind == "t-polar":
        u = _get_factor(doc, "u")
        p = _get_factor(doc, "p")
        yield "u_structure", structure_residual(u, "t_orthogonal"), lim
        yield "p_symmetry", structure_residual(p, "symmetric"), lim
        yield "reconstruction", (u @ p - m).norm(), lim
    elif kind == "pinv":
        if doc.get("outcome") == "nonexistent":
            again = pinv_t(m)
            yield "nonexistence_confirmed", (0.0 if again is None else 1.0), 0.5
        else:
            x = _get_factor(doc, "pinv")
            for name, val in penrose_residuals(m, x).items():
                yield f"penrose_{name}", val, lim
    else:
        raise ParseError(f"result document has unknown kind {kind!r}")


def cmd_check(args) -> int:
    m = _load_matrix(args.input)
    try:
        with open(args.result) as f:
            doc = fileformat.loads(f.read())
    except OSError as exc:
        raise ParseError(f"cannot read {args.result}: {exc}") from exc
    if not isinstance(doc, dict):
        raise ParseError("result document must be an object")
    if doc.get("rows") != m.shape[0] or doc.get("cols") != m.shape[1]:
        raise ParseError("result document dimensions do not match the input")
    for name, residual, limit in _verify(m, doc, args.tol):
        print(f"{name}: residual={residual:.3e} limit={limit:.3e}")
        if residual > limit:
            print(f"verification failed: {name}", file=sys.stderr)
            return 4
    return 0


def make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="dualsvd",
        description="Decompositions of square matrices over the dual numbers.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_dec = sub.add_parser("decompose", help="run a decomposition on a matrix file")
    p_dec.add_argument("--kind", required=True, choices=KINDS)
    p_dec.add_argument("--input", required=True)
    p_dec.add_argument("--output")
    p_dec.add_argument("--tol", type=float, default=1e-8)
    p_dec.add_argument("--cluster-tol", type=float, default=1e-8)
    p_dec.set_defaults(func=cmd_decompose)

    p_cls = sub.add_parser("classify", help="classify a 2x2 Laguerre transform")
    p_cls.add_argument("--input", required=True)
    p_cls.set_defaults(func=cmd_classify)

    p_chk = sub.add_parser("check", help="re-verify a result document")
    p_chk.add_argument("--input", required=True)
    p_chk.add_argument("--result", required=True)
    p_chk.add_argument("--tol", type=float, default=1e-8)
    p_chk.set_defaults(func=cmd_check)

    return parser


def main(argv=None) -> int:
    args = make_parser().parse_args(argv)
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return 2
    except _PRECONDITION_ERRORS as exc:
        print(f"precondition violated: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 3
    except DualLinAlgError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 4


def entry():
    sys.exit(main())


if __name__ == "__main__":
    entry()
