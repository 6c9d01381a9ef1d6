"""CLI command handlers - the subcommands that inspect a model without changing it"""

from ..blowup import crepant_candidates
from ..cohomology import check_poincare_duality, cr_betti, euler_cr
from ..exceptions import InvariantViolation, PolytopeError, UsageError
from ..extras import group_text, vector_text
from ..model import (
    check_box_partition,
    check_model,
    elementary_divisors,
    is_manifold,
    is_positively_omnioriented,
    is_quasi_sl,
    local_group_order,
    reorient,
    twisted_sectors,
    validate_model,
    vertex_orders,
    vertex_signs,
)
from ..modelfile import list_fixtures
from ..polytope import Face, f_vector, h_vector
from ..ring import sector_product, sector_product_table
from ..settings import Settings


class CommandHandlers:
    """CLI command handlers - implements the read-only subcommands"""

    def handle_validate(self, args):
        """
        validate MODEL: check the polytope, the primitivity and independence of the
        characteristic vectors and the normals, and the vertex box decomposition.
        Exits 1 with every diagnostic on an invalid model.
        """
        M = self.loadModel(args, validate=False)
        diagnostics = validate_model(M)
        if not diagnostics:
            partition = check_box_partition(M)
            if partition:
                raise InvariantViolation("; ".join(partition))

        result = {
            "valid": not diagnostics,
            "dimension": M.n,
            "facets": M.m,
            "vertices": len(M.polytope.vertices),
        }
        if self.human and not diagnostics:
            self.echo(f"{self.input_name}: {Settings.text['valid']}")
            self.field("dimension", M.n)
            self.field("facets", M.m)
            self.field("vertices", len(M.polytope.vertices))
        return self.report(result, diagnostics, status=1 if diagnostics else 0)

    def handle_info(self, args):
        """
        info MODEL: f- and h-vectors, vertex group orders and structures, vertex signs
        (when the model carries normals), faces with nontrivial groups, manifold flag.
        """
        M = self.loadModel(args)
        orders = vertex_orders(M)
        signs = vertex_signs(M) if M.normals is not None else {}

        vertices = []
        for v in M.polytope.vertices:
            vertices.append(
                {
                    "facets": self.faceNames(M, v),
                    "order": orders[v],
                    "divisors": list(elementary_divisors(M, Face(v, 0))),
                    "sign": signs.get(v),
                }
            )
        singular = [
            {"face": self.faceNames(M, F), "order": local_group_order(M, F), "divisors": list(elementary_divisors(M, F))}
            for F in M.faces
            if not F.is_polytope and local_group_order(M, F) > 1
        ]
        result = {
            "dimension": M.n,
            "facets": list(M.facets),
            "f_vector": list(f_vector(M.polytope)),
            "h_vector": list(h_vector(M.polytope)),
            "manifold": is_manifold(M),
            "positively_omnioriented": is_positively_omnioriented(M) if M.normals is not None else None,
            "vertices": vertices,
            "singular_faces": singular,
        }

        if self.human:
            self.field("dimension", M.n)
            self.field("facets", " ".join(M.facets))
            self.field("f-vector", vector_text(result["f_vector"]))
            self.field("h-vector", vector_text(result["h_vector"]))
            self.echo(Settings.text["manifold"] if result["manifold"] else Settings.text["orbifold"])
            if M.normals is not None:
                self.field("positively omnioriented", str(result["positively_omnioriented"]).lower())
            rows = [
                ["∩".join(v["facets"]), v["order"], group_text(v["divisors"]), "" if v["sign"] is None else f"{v['sign']:+d}"]
                for v in vertices
            ]
            self.table(["vertex", "order", "group", "sign"], rows, "VERTICES", numeric=(False, True, False, True))
            if singular:
                rows = [["∩".join(f["face"]), f["order"], group_text(f["divisors"])] for f in singular]
                self.table(["face", "order", "group"], rows, "SINGULAR FACES", numeric=(False, True, False))
        return self.report(result)

    def handle_sectors(self, args):
        """
        sectors MODEL: every twisted sector (F, g) with its lattice point, coefficients and age.
        """
        M = self.loadModel(args)
        sectors = [self.sectorData(M, s) for s in twisted_sectors(M)]
        result = {"count": len(sectors), "sectors": sectors}
        if self.human:
            if not sectors:
                self.echo(Settings.text["no_sectors"])
            else:
                rows = [
                    ["∩".join(s["face"]), vector_text(s["lattice_point"]), vector_text(s["coefficients"]), s["age"]]
                    for s in sectors
                ]
                self.table(["face", "lattice point", "coefficients", "age"], rows, "TWISTED SECTORS")
                self.echo(Settings.text["sectors_listed"].format(len(sectors)))
        return self.report(result)

    def handle_betti(self, args):
        """
        betti MODEL: the Chen-Ruan Betti table by exact rational degree, checked for
        Poincaré duality sector by sector.
        """
        M = self.loadModel(args)
        table = cr_betti(M)
        duality = check_poincare_duality(M)
        if not duality:
            raise InvariantViolation("; ".join(duality.violations) or "CR Betti table is not palindromic")
        result = {
            "dimension": table.dim,
            "table": [{"degree": d, "rank": r} for d, r in table.entries],
            "total": table.euler,
            "quasi_sl": table.quasi_sl,
            "palindromic": table.is_palindromic(),
        }
        if self.human:
            self.table(["degree", "rank"], [[d, r] for d, r in table.entries], "CHEN-RUAN BETTI NUMBERS", (True, True))
            self.field("total rank", table.euler)
            self.echo(Settings.text["quasi_sl"] if table.quasi_sl else Settings.text["not_quasi_sl"])
        return self.report(result)

    def handle_euler(self, args):
        """
        euler MODEL: the CR Euler characteristic by sectors and by vertices; they must agree.
        """
        M = self.loadModel(args)
        rep = euler_cr(M)
        result = {
            "value": rep.value,
            "by_sectors": rep.by_sectors,
            "by_vertices": rep.by_vertices,
            "quasi_sl": rep.quasi_sl,
            "euler_characteristic": rep.is_euler_characteristic,
            "k_theory_ranks": rep.k_theory_ranks,
        }
        if self.human:
            self.field("by sectors", rep.by_sectors)
            self.field("by vertices", rep.by_vertices)
            self.field("chi_CR", rep.value)
            if rep.k_theory_ranks:
                self.field("rank K0_orb, K1_orb", "{}, {}".format(*rep.k_theory_ranks))
            else:
                self.echo(Settings.text["sector_count"])
        return self.report(result)

    def handle_quasi_sl(self, args):
        """
        quasi-sl MODEL: whether every twisted sector has integral age, with the offenders.
        """
        M = self.loadModel(args)
        rep = is_quasi_sl(M)
        offenders = [self.sectorData(M, s) for s in rep.offenders]
        result = {"quasi_sl": rep.quasi_sl, "offenders": offenders}
        if self.human:
            self.echo(Settings.text["quasi_sl"] if rep else Settings.text["not_quasi_sl"])
            if offenders:
                rows = [["∩".join(s["face"]), vector_text(s["lattice_point"]), s["age"]] for s in offenders]
                self.table(["face", "lattice point", "age"], rows)
        return self.report(result)

    def handle_crepant_candidates(self, args):
        """
        crepant-candidates MODEL --face NAMES: the lattice points λ_0 giving a crepant
        blowup along the face, with the age-one dual vector of each of its vertices.
        """
        M = self.loadModel(args)
        face = self.parseFace(M, args.face)
        rep = crepant_candidates(M, face)
        result = {
            "face": self.faceNames(M, face),
            "candidates": [
                {"lattice_point": list(g.lattice_point), "coefficients": list(g.coeffs)} for g in rep.candidates
            ],
            "dual_vectors": [{"vertex": self.faceNames(M, w), "vector": list(v)} for w, v in rep.dual_vectors],
        }
        if self.human:
            if rep.candidates:
                rows = [[vector_text(g.lattice_point), vector_text(g.coeffs)] for g in rep.candidates]
                self.table(["lambda0", "b"], rows, f"CREPANT CANDIDATES OVER {M.describe(face)}")
            else:
                self.echo(f"no crepant candidates over {M.describe(face)}")
            rows = [["∩".join(d["vertex"]), vector_text(d["vector"])] for d in result["dual_vectors"]]
            self.table(["vertex", "dual vector"], rows)
        return self.report(result)

    def handle_product(self, args):
        """
        product MODEL --s1 SECTOR --s2 SECTOR: target sector and Θ facets of s1 ⋆ s2.
        Sectors are written FACE:POINT, e.g. F1,F5:1,1,1,1, and P for the untwisted one.
        Without --s1/--s2 the whole product table is computed and checked for associativity.
        """
        M = self.loadModel(args)
        if args.s1 is None and args.s2 is None:
            return self._product_table(M)
        if args.s1 is None or args.s2 is None:
            raise UsageError("give both --s1 and --s2, or neither for the full table")

        s1, s2 = self.parseSector(M, args.s1), self.parseSector(M, args.s2)
        p = sector_product(M, s1, s2)
        result = {"zero": p.zero, "s1": self.sectorData(M, s1), "s2": self.sectorData(M, s2)}
        if not p.zero:
            result.update(
                {
                    "target": self.sectorData(M, p.sector),
                    "theta": [M.facets[i] for i in p.theta_facets],
                    "cases": {M.facets[i]: tag for i, tag in p.case_tags.items()},
                    "witness": self.faceNames(M, p.witness),
                }
            )
        if self.human:
            if p.zero:
                self.echo("product is zero: the faces do not meet")
            else:
                target = result["target"]
                self.field("target face", "∩".join(target["face"]) or "P")
                self.field("element", vector_text(target["lattice_point"]))
                self.field("age", target["age"])
                self.field("theta", " ".join(result["theta"]) or "-")
                rows = [[name, tag] for name, tag in result["cases"].items()]
                self.table(["facet", "case"], rows)
        return self.report(result)

    def _product_table(self, M):
        table = sector_product_table(M)
        if table.associativity_violations:
            raise InvariantViolation(f"{len(table.associativity_violations)} non-associative sector triples")

        def label(s):
            name = M.describe(s.face)
            return name if not s.twisted else f"{name}:{','.join(str(x) for x in s.element.lattice_point)}"

        labels = [label(s) for s in table.sectors]
        entries = []
        for (i, j), p in sorted(table.entries.items()):
            entries.append(
                {
                    "s1": labels[i],
                    "s2": labels[j],
                    "zero": p.zero,
                    "target": None if p.zero else label(p.sector),
                    "theta": [M.facets[k] for k in p.theta_facets],
                }
            )
        result = {"sectors": labels, "entries": entries, "associative": True}
        if self.human:
            rows = [[e["s1"], e["s2"], "0" if e["zero"] else e["target"], " ".join(e["theta"]) or "-"] for e in entries]
            self.table(["s1", "s2", "product", "theta"], rows, "SECTOR PRODUCTS")
        return self.report(result)

    def handle_reorient(self, args):
        """
        reorient MODEL --facets NAMES [--out FILE]: reverse the characteristic vectors of
        the given facets (a change of omniorientation) and report what changed.
        """
        M = self.loadModel(args)
        names = self.parseNames(args.facets)
        try:
            R = check_model(reorient(M, names))
        except PolytopeError as e:
            raise UsageError(str(e))
        result = {
            "flipped": names,
            "quasi_sl": bool(is_quasi_sl(R)),
            "was_quasi_sl": bool(is_quasi_sl(M)),
            "positively_omnioriented": is_positively_omnioriented(R) if R.normals is not None else None,
            "sector_ages": [self.sectorData(R, s)["age"] for s in twisted_sectors(R)],
            "model": self.writeModel(R, args),
        }
        if self.human:
            self.field("flipped", " ".join(names))
            self.echo(Settings.text["quasi_sl"] if result["quasi_sl"] else Settings.text["not_quasi_sl"])
            if result["positively_omnioriented"] is not None:
                self.field("positively omnioriented", str(result["positively_omnioriented"]).lower())
        return self.report(result)

    def handle_fixtures(self, args):
        """
        fixtures: list the model files shipped with the package (or found in QTORB_FIXTURES).
        """
        names = list_fixtures()
        if self.human:
            for name in names:
                self.echo(name)
        return self.report({"fixtures": names})
