"""CLI command handlers - blowups, McKay verification and resolution"""

from ..blowup import blow_up, det_scaling_violations, make_blowup_spec, resolve, verify_mckay
from ..exceptions import InvariantViolation
from ..extras import vector_text
from ..model import is_manifold, vertex_orders
from ..settings import Settings


class BlowupCommandHandlers:
    """CLI command handlers - implements the subcommands that build new models"""

    def _blowup_spec(self, M, args):
        face = self.parseFace(M, args.face)
        return make_blowup_spec(M, face, self.parseInts(args.lambda0, M.n))

    def _spec_data(self, M, spec) -> dict:
        return {
            "face": self.faceNames(M, spec.face),
            "lambda0": list(spec.lambda0),
            "b": list(spec.b),
            "crepant": spec.crepant,
            "resolution_step": spec.resolution_step,
        }

    def _betti_data(self, table) -> list:
        return [{"degree": d, "rank": r} for d, r in table.entries]

    def handle_blowup(self, args):
        """
        blowup MODEL --face NAMES --lambda0 INTS [--name NAME] [--out FILE]: truncate the
        face and give the new facet λ_0. λ_0 must be primitive and in the open cone of the
        characteristic vectors of the face. Negative entries are written --lambda0=-1,-2.
        """
        M = self.loadModel(args)
        spec = self._blowup_spec(M, args)
        Y = blow_up(M, spec, args.name)
        violations = det_scaling_violations(M, spec, Y)
        if violations:
            raise InvariantViolation("; ".join(violations))

        orders = vertex_orders(Y)
        result = self._spec_data(M, spec)
        result.update(
            {
                "order_drops": spec.order_drops(M),
                "new_facet": Y.facets[-1],
                "manifold": is_manifold(Y),
                "vertex_orders": [
                    {"facets": self.faceNames(Y, v), "order": orders[v]} for v in Y.polytope.vertices
                ],
                "model": self.writeModel(Y, args),
            }
        )
        if self.human:
            self.field("face", M.describe(spec.face))
            self.field("lambda0", vector_text(spec.lambda0))
            self.field("b", vector_text(spec.b))
            self.field("crepant", str(spec.crepant).lower())
            self.field("resolution step", str(spec.resolution_step).lower())
            self.field("new facet", Y.facets[-1])
            rows = [["∩".join(r["facets"]), r["order"]] for r in result["vertex_orders"]]
            self.table(["vertex", "order"], rows, "VERTICES AFTER BLOWUP", numeric=(False, True))
        return self.report(result)

    def handle_mckay(self, args):
        """
        mckay MODEL --face NAMES --lambda0 INTS: compare the CR Euler characteristic and
        Betti numbers before and after the blowup. A quasi-SL input blown up crepantly is
        in scope: Euler conservation always, Betti equality up to dimension 6 and h^2
        monotonicity from dimension 8 are then expected, and a failure exits 3.
        Out of scope the comparisons are still reported, without a verdict.
        """
        M = self.loadModel(args)
        spec = self._blowup_spec(M, args)
        rep = verify_mckay(M, spec)
        result = self._spec_data(M, spec)
        result.update(
            {
                "dimension": rep.dim,
                "in_scope": rep.in_scope,
                "scope_notes": list(rep.scope_notes),
                "euler_before": rep.euler_before,
                "euler_after": rep.euler_after,
                "euler_conserved": rep.euler_conserved,
                "betti_before": self._betti_data(rep.betti_before),
                "betti_after": self._betti_data(rep.betti_after),
                "betti_conserved": rep.betti_conserved,
                "h2_before": rep.betti_before.rank(2),
                "h2_after": rep.betti_after.rank(2),
                "h2_monotone": rep.h2_monotone,
                "quasi_sl_preserved": rep.quasi_sl_preserved,
                "untwisted_h2_gain": rep.untwisted_h2_gain,
                "violations": list(rep.violations),
            }
        )
        if self.human:
            self.field("blowup", f"{M.describe(spec.face)} with lambda0 {vector_text(spec.lambda0)}")
            if not rep.in_scope:
                self.echo(f"{Settings.text['out_of_scope']}: {'; '.join(rep.scope_notes)}")
            degrees = sorted(set(rep.betti_before.degrees) | set(rep.betti_after.degrees))
            rows = [[d, rep.betti_before.rank(d), rep.betti_after.rank(d)] for d in degrees]
            self.table(["degree", "before", "after"], rows, "CHEN-RUAN BETTI NUMBERS", (True, True, True))
            self.field("euler", f"{rep.euler_before} -> {rep.euler_after}")
            for name in ("euler_conserved", "betti_conserved", "h2_monotone", "quasi_sl_preserved"):
                self.field(name.replace("_", " "), str(getattr(rep, name)).lower())
            self.field("untwisted h2 gain", rep.untwisted_h2_gain)

        if rep.violations:
            return self.report(
                result,
                [f"{name} failed" for name in rep.violations],
                status=3,
                message="McKay statements failed on an in-scope blowup",
            )
        return self.report(result)

    def handle_resolve(self, args):
        """
        resolve MODEL [--out FILE]: blow up repeatedly until every local group is trivial.
        Each step takes the face of largest codimension with a nontrivial interior box and
        its primitive element of least age.
        """
        M = self.loadModel(args)
        res = resolve(M)
        steps = []
        before = M
        for spec, after in zip(res.steps, res.models):
            data = self._spec_data(before, spec)
            data["new_facet"] = after.facets[-1]
            steps.append(data)
            before = after

        Z = res.final
        result = {
            "steps": steps,
            "manifold": is_manifold(Z),
            "facets": Z.m,
            "vertices": len(Z.polytope.vertices),
            "model": self.writeModel(Z, args),
        }
        if self.human:
            if not steps:
                self.echo(Settings.text["manifold"])
            else:
                rows = [
                    [k + 1, "∩".join(s["face"]), vector_text(s["lambda0"]), vector_text(s["b"]), s["new_facet"]]
                    for k, s in enumerate(steps)
                ]
                self.table(["step", "face", "lambda0", "b", "new facet"], rows, "RESOLUTION")
                self.field("facets", Z.m)
                self.field("vertices", len(Z.polytope.vertices))
        return self.report(result)
