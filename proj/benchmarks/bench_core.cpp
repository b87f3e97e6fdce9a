#include <benchmark/benchmark.h>

#include "pslip/energy.hpp"
#include "pslip/linear.hpp"
#include "pslip/mms.hpp"
#include "pslip/random_fields.hpp"
#include "pslip/solver.hpp"
#include "pslip/stress.hpp"

using namespace pslip;

namespace {

Domain make_dom(int n) { return Domain(1.0, 0.7, n, n); }

void BM_SymGrad(benchmark::State& state) {
    const Domain dom = make_dom(static_cast<int>(state.range(0)));
    Rng rng(1);
    const VectorField u = random_tangent_field(dom, rng);
    for (auto _ : state) {
        benchmark::DoNotOptimize(sym_grad(u, dom));
    }
}
BENCHMARK(BM_SymGrad)->Arg(32)->Arg(64);

void BM_GradTensorMagnitude(benchmark::State& state) {
    const Domain dom = make_dom(static_cast<int>(state.range(0)));
    Rng rng(1);
    const TensorField D = sym_grad(random_tangent_field(dom, rng), dom);
    for (auto _ : state) {
        benchmark::DoNotOptimize(grad_tensor_magnitude(grad_tensor(D, dom), dom));
    }
}
BENCHMARK(BM_GradTensorMagnitude)->Arg(32)->Arg(64);

void BM_BTimesD(benchmark::State& state) {
    const Domain dom = make_dom(64);
    Rng rng(1);
    const TensorField D = sym_grad(random_tangent_field(dom, rng), dom);
    const StressParams params{1.8, 1e-2};
    for (auto _ : state) {
        benchmark::DoNotOptimize(b_times_d(D, params, dom));
    }
}
BENCHMARK(BM_BTimesD);

void BM_Assemble(benchmark::State& state) {
    const Domain dom = make_dom(static_cast<int>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(assemble(dom, BcVariant::NavierStress));
    }
}
BENCHMARK(BM_Assemble)->Arg(32)->Arg(64);

void BM_CgSolve(benchmark::State& state) {
    const Domain dom = make_dom(static_cast<int>(state.range(0)));
    const LinearOperator op = assemble(dom, BcVariant::NavierStress);
    const VectorField f = mms::mms_forcing(dom, 2.0, 0.0, 0.75);
    for (auto _ : state) {
        benchmark::DoNotOptimize(solve_linear(op, f, 1e-10));
    }
}
BENCHMARK(BM_CgSolve)->Arg(16)->Arg(32)->Unit(benchmark::kMillisecond);

void BM_RhsF(benchmark::State& state) {
    const Domain dom = make_dom(64);
    Rng rng(1);
    const VectorField v = random_tangent_field(dom, rng);
    const VectorField f = random_data_field(dom, rng);
    const StressParams params{1.8, 1e-2};
    for (auto _ : state) {
        benchmark::DoNotOptimize(rhs_F(v, f, params, dom));
    }
}
BENCHMARK(BM_RhsF);

void BM_EnergyGrad(benchmark::State& state) {
    const Domain dom = make_dom(static_cast<int>(state.range(0)));
    Rng rng(1);
    const VectorField f = random_data_field(dom, rng);
    const EnergyFunctional e = make_energy(dom, StressParams{1.8, 1e-2}, f);
    const auto x = e.op.dofs.gather(random_tangent_field(dom, rng));
    for (auto _ : state) {
        benchmark::DoNotOptimize(energy_grad_dofs(e, x));
    }
}
BENCHMARK(BM_EnergyGrad)->Arg(32)->Arg(64);

void BM_FixedPointStep(benchmark::State& state) {
    const Domain dom = make_dom(32);
    SlipProblem prob;
    prob.dom = dom;
    prob.params = StressParams{1.9, 1.0};
    prob.q = 4.0;
    prob.f = mms::mms_forcing(dom, 1.9, 1.0, 0.75);
    const ConstantsEstimate consts{1.5, 0.4, 1.0, 4.0, 1.9, 0, "bench"};
    Rng rng(1);
    const VectorField v = random_tangent_field(dom, rng, 3, 0.2);
    for (auto _ : state) {
        benchmark::DoNotOptimize(map_T(v, prob, consts, 1e-10));
    }
}
BENCHMARK(BM_FixedPointStep)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
