"""Finite-field oracle: realization, counting, and the numeric Hall algebra."""

import itertools
from fractions import Fraction

import pytest

from hallsym.exactalg import ConsistencyError
from hallsym.partitions import partitions_of
from hallsym import cyclic_fq as cf
from hallsym import hall_jordan as hj
from hallsym import fqlinalg as fl


def pcls(*parts):
    return cf.CyclicIsoClass.from_partition(parts)


class TestIsoClass:
    def test_canonical_order_and_vertex_reduction(self):
        a = cf.CyclicIsoClass(2, [(3, 1), (0, 2)])
        assert a.summands == ((0, 2), (1, 1))
        # [0;2] spans e_-1, e_0 (one line at each vertex); [1;1] sits at vertex 1
        assert a.dim_vector() == (1, 2)

    def test_partition_round_trip(self):
        assert pcls(3, 1).to_partition() == (3, 1)
        assert cf.CyclicIsoClass.from_partition(()).is_zero()

    def test_render_parse(self):
        c = cf.CyclicIsoClass(2, [(1, 2), (0, 1)])
        assert c.render() == "[1;2]+[0;1]"
        assert c.render(with_m=True) == "m=2: [1;2]+[0;1]"
        assert cf.CyclicIsoClass.parse("m=2: [1;2]+[0;1]") == c
        assert cf.CyclicIsoClass.parse("[1;2]+[0;1]", 2) == c
        assert cf.CyclicIsoClass.parse("0", 3).is_zero()


class TestRealize:
    def test_single_jordan_block(self):
        M = cf.realize(pcls(2), 2)
        assert M.dims == (2,)
        assert M.arrows[0] == ((0, 1), (0, 0))

    def test_two_vertex_string(self):
        M = cf.realize(cf.CyclicIsoClass(2, [(1, 2)]), 2)
        assert M.dims == (1, 1)
        # arrow out of vertex 1 is the identity, the one out of vertex 0 is zero
        assert M.arrows[1] == ((1,),)
        assert M.arrows[0] == ((0,),)

    def test_semisimple(self):
        M = cf.realize(pcls(1, 1), 3)
        assert M.dims == (2,)
        assert M.arrows[0] == ((0, 0), (0, 0))

    def test_cap(self):
        with pytest.raises(cf.CapExceededError):
            cf.realize(pcls(9), 2)


class TestEnumerate:
    def test_single_vertex_is_partitions(self):
        assert len(cf.enumerate_iso(1, (2,))) == 2
        assert len(cf.enumerate_iso(1, (4,))) == 5

    def test_two_vertex_delta(self):
        classes = {c.render() for c in cf.enumerate_iso(2, (1, 1))}
        assert classes == {"[0;2]", "[1;2]", "[0;1]+[1;1]"}

    def test_dim_vectors_verified(self):
        for m in (1, 2, 3):
            for cls in cf.classes_up_to_dim(m, 4):
                assert sum(cls.dim_vector()) == cls.total_dim()


class TestDecompose:
    def test_round_trip_exhaustive(self):
        for m in (1, 2, 3):
            for cls in cf.classes_up_to_dim(m, 5):
                assert cf.decompose(cf.realize(cls, 2)) == cls

    def test_round_trip_other_fields(self):
        for q in (3, 5):
            for cls in cf.classes_up_to_dim(2, 4):
                assert cf.decompose(cf.realize(cls, q)) == cls

    def test_zero_module(self):
        assert cf.decompose(cf.FqModule(2, 1, (0,), ((),))).is_zero()


class TestSubmoduleCounts:
    def test_published_values(self):
        assert cf.submodule_count(pcls(1, 1), pcls(1), pcls(1), 2) == 3
        for q in (2, 3, 5):
            assert cf.submodule_count(pcls(2), pcls(1), pcls(1), q) == 1
        assert cf.submodule_count(pcls(2, 1), pcls(1), pcls(2), 2) == 2

    def test_dimension_mismatch_is_zero(self):
        assert cf.submodule_count(pcls(2), pcls(1), pcls(2), 2) == 0

    def test_mass_check_against_raw_enumeration(self):
        # sum over the classified table equals the raw invariant-tuple count
        for q in (2, 3):
            for m in (1, 2):
                for cls in cf.classes_up_to_dim(m, 4 if q == 2 else 3):
                    table = cf.submodule_table(cls, q)
                    assert sum(table.values()) == cf.invariant_subspace_count(cls, q)

    def test_against_symbolic_hall_polynomials(self):
        for q in (2, 3):
            for n in range(1, 5):
                for lam in partitions_of(n):
                    table = cf.submodule_table(pcls(*lam), q)
                    for d in range(n + 1):
                        for mu in partitions_of(d):
                            for nu in partitions_of(n - d):
                                expected = hj.hall_polynomial(mu, nu, lam).eval_at(q)
                                got = table.get((pcls(*nu), pcls(*mu)), 0)
                                assert got == expected, (lam, mu, nu, q)

    def test_cap(self):
        with pytest.raises(cf.CapExceededError):
            cf.submodule_table(pcls(7), 2)


class TestEndAndAut:
    def test_end_dim_examples(self):
        assert cf.end_dim(pcls(1, 1), 2) == 4
        assert cf.end_dim(pcls(2), 2) == 2
        assert cf.end_dim(cf.CyclicIsoClass(2, [(1, 2)]), 2) == 1

    def test_aut_single_string(self):
        for q in (2, 3):
            for r in (1, 2, 3):
                assert cf.aut_count(pcls(r), q) == q ** (r - 1) * (q - 1)

    def test_aut_gl(self):
        assert cf.aut_count(pcls(1, 1), 2) == 6
        assert cf.aut_count(pcls(1, 1, 1), 2) == 168

    def test_two_vertex_pair_of_even_strings(self):
        # honest enumeration; the published two-string closed form gives 1 here
        cls = cf.CyclicIsoClass(2, [(1, 2), (0, 2)])
        assert cf.aut_count(cls, 2) == 4
        assert cf.end_dim(cls, 2) == 4

    def test_kernel_sieve_matches_enumeration(self):
        for q in (2, 3):
            for cls in [pcls(1, 1), pcls(2, 1), pcls(1, 1, 1), cf.CyclicIsoClass(2, [(0, 2), (1, 1)])]:
                mod = cf.realize(cls, q)
                assert cf._aut_count_kernel_sieve(mod) == cf._aut_count_enumerate(mod)

    def test_closed_form_matches_enumeration(self):
        for q in (2, 3):
            for m in (1, 2):
                for cls in cf.classes_up_to_dim(m, 4):
                    assert cf.aut_order_value(cls, q) == cf.aut_count(cls, q), cls

    def test_string_hom_dims_match_solver(self):
        for m in (1, 2, 3):
            strings = [(i, l) for i in range(m) for l in range(1, 5)]
            for a in strings:
                for b in strings:
                    A = cf.realize(cf.CyclicIsoClass(m, [a]), 2)
                    B = cf.realize(cf.CyclicIsoClass(m, [b]), 2)
                    assert cf.string_hom_dim(m, a, b) == cf.hom_dim(A, B), (m, a, b)

    def test_aut_against_symbolic(self):
        for q in (2, 3):
            for n in range(1, 5):
                for lam in partitions_of(n):
                    assert cf.aut_count(pcls(*lam), q) == hj.aut_order(lam).eval_at(q)


class TestSocle:
    def test_single_vertex(self):
        assert cf.socle_squarefree(pcls(4))
        assert not cf.socle_squarefree(pcls(1, 1))
        assert cf.socle_squarefree(cf.CyclicIsoClass(1, ()))

    def test_two_vertex_published_support(self):
        assert cf.socle_squarefree(cf.CyclicIsoClass(2, [(1, 1), (0, 3)]))
        assert cf.socle_squarefree(cf.CyclicIsoClass(2, [(1, 3), (0, 1)]))
        assert not cf.socle_squarefree(cf.CyclicIsoClass(2, [(0, 2), (0, 2)]))

    def test_socle_vertices_match_kernel_dims(self):
        # the combinatorial socle agrees with the kernel of all arrows
        for m in (1, 2, 3):
            for cls in cf.classes_up_to_dim(m, 4):
                mod = cf.realize(cls, 2)
                per_vertex = [0] * m
                for v in cls.socle_vertices():
                    per_vertex[v] += 1
                for h in range(m):
                    if mod.dims[h] == 0:
                        null_dim = 0
                    elif not mod.arrows[h]:
                        null_dim = mod.dims[h]  # zero-dimensional target
                    else:
                        null_dim = len(fl.nullspace(mod.arrows[h], 2))
                    assert null_dim == per_vertex[h], (cls, h)


class TestZElements:
    def test_single_vertex_values(self):
        z = cf.z_r_numeric(1, 1, 2)
        assert z.terms == {pcls(1): Fraction(1, 2)}
        z = cf.z_r_numeric(1, 2, 3)
        assert z.terms == {pcls(2): Fraction(2, 3)}

    def test_only_single_strings_survive_single_vertex(self):
        for r in (1, 2, 3):
            z = cf.z_r_numeric(1, r, 2)
            assert set(z.terms) == {pcls(r)}

    def test_two_vertex_degree_one(self):
        z = cf.z_r_numeric(2, 1, 2)
        expected = {
            cf.CyclicIsoClass(2, [(0, 1), (1, 1)]): Fraction(1, 4),
            cf.CyclicIsoClass(2, [(0, 2)]): Fraction(-1, 4),
            cf.CyclicIsoClass(2, [(1, 2)]): Fraction(-1, 4),
        }
        assert z.terms == expected


class TestNumericProducts:
    def test_published_degree_two(self):
        one = cf.NumHallElem.iso(pcls(1), 2)
        assert cf.mul_numeric(one, one).terms == {
            pcls(1, 1): Fraction(3),
            pcls(2): Fraction(1),
        }

    def test_unit(self):
        x = cf.NumHallElem(2, 3, {cf.CyclicIsoClass(2, [(0, 2)]): Fraction(5, 7)})
        u = cf.NumHallElem.unit(2, 3)
        assert cf.mul_numeric(u, x) == x
        assert cf.mul_numeric(x, u) == x

    def test_twists_make_simples_noncommutative(self):
        s0 = cf.NumHallElem.iso(cf.CyclicIsoClass(2, [(0, 1)]), 2)
        s1 = cf.NumHallElem.iso(cf.CyclicIsoClass(2, [(1, 1)]), 2)
        left = cf.mul_numeric(s0, s1)
        right = cf.mul_numeric(s1, s0)
        assert left.v_exp == right.v_exp == 1
        assert left != right
        with pytest.raises(ConsistencyError):
            left.as_rational_terms()

    def test_euler_form_vanishes_on_delta(self):
        for m in (1, 2, 3):
            d = cf.delta_dim(m, 2)
            for cls in cf.classes_up_to_dim(m, 3):
                assert cf.euler_form(m, d, cls.dim_vector()) == 0
                assert cf.euler_form(m, cls.dim_vector(), d) == 0

    def test_extension_route_matches_submodule_route(self):
        for q in (2, 3):
            for m in (1, 2):
                classes = cf.classes_up_to_dim(m, 3)
                for A, B in itertools.product(classes, classes):
                    if A.total_dim() + B.total_dim() > 5:
                        continue
                    assert cf._mul_classes_fillings(A, B, q) == cf._mul_classes_submodules(
                        A, B, q
                    ), (m, q, A.render(), B.render())

    def test_matches_symbolic_single_vertex(self):
        for q in (2, 3):
            for a in partitions_of(2):
                for b in partitions_of(2):
                    sym = hj.mul(
                        hj.HallElem({a: hj.q_one()}), hj.HallElem({b: hj.q_one()})
                    )
                    num = cf.mul_numeric(
                        cf.NumHallElem.iso(pcls(*a), q), cf.NumHallElem.iso(pcls(*b), q)
                    )
                    expected = {
                        pcls(*lam): coeff.eval_at(q) for lam, coeff in sym.terms.items()
                    }
                    assert num.terms == expected


class TestCentrality:
    def test_z_central_small(self):
        assert cf.is_central(cf.z_r_numeric(1, 1, 2), 4)
        assert cf.is_central(cf.z_r_numeric(2, 1, 2), 3)
        assert cf.is_central(cf.z_r_numeric(2, 1, 3), 3)

    def test_simple_not_central(self):
        s0 = cf.NumHallElem.iso(cf.CyclicIsoClass(2, [(0, 1)]), 2)
        assert not cf.is_central(s0, 2)
        assert cf.central_failures(s0, 2)


class TestCoproductNumeric:
    def test_simple(self):
        s0 = cf.NumHallElem.iso(cf.CyclicIsoClass(2, [(0, 1)]), 2)
        delta = cf.coproduct_numeric(s0)
        zero = cf.CyclicIsoClass(2, ())
        cls = cf.CyclicIsoClass(2, [(0, 1)])
        assert delta == {(cls, zero): (Fraction(1), 0), (zero, cls): (Fraction(1), 0)}

    def test_matches_symbolic_single_vertex(self):
        for q in (2, 3):
            for lam in [(2,), (1, 1), (2, 1)]:
                sym = hj.coproduct(hj.HallElem({lam: hj.q_one()}))
                num = cf.coproduct_numeric(cf.NumHallElem.iso(pcls(*lam), q))
                expected = {
                    (pcls(*a), pcls(*b)): (c.eval_at(q), 0)
                    for (a, b), c in sym.terms.items()
                }
                assert num == expected

    def test_primitivity(self):
        assert cf.is_primitive_numeric(cf.primitive_center_numeric(1, 2, 2))
        assert cf.is_primitive_numeric(cf.primitive_center_numeric(2, 1, 2))
        assert not cf.is_primitive_numeric(
            cf.NumHallElem.iso(pcls(1, 1), 2)
        )


class TestConventionValidation:
    def test_c_recursion_small(self):
        for m, r, q in [(1, 1, 2), (1, 2, 2), (1, 2, 3), (2, 1, 2), (2, 2, 2), (3, 1, 2)]:
            assert cf.c_recursion_holds(m, r, q), (m, r, q)

    def test_primitive_center_matches_symbolic_single_vertex(self):
        for q in (2, 3):
            for n in (1, 2, 3):
                sym = hj.primitive_center(n)
                num = cf.primitive_center_numeric(1, n, q)
                assert num.terms == {
                    pcls(*lam): c.eval_at(q) for lam, c in sym.terms.items()
                }


class TestSubspaceEnumeration:
    def test_counts_match_gaussian_binomials(self):
        for p in (2, 3):
            for n in range(5):
                for k in range(n + 1):
                    assert len(fl.subspaces(n, p, k)) == fl.gaussian_binomial(n, k, p)

    def test_rref_canonical(self):
        for p in (2, 3):
            for U in fl.subspaces(3, p, 2):
                rows, _ = fl.rref(U, p)
                assert rows == U
