#include <benchmark/benchmark.h>

#include "otlck/lckcheck.hpp"
#include "otlck/io.hpp"

using namespace otlck;

namespace {

QPoly qp(std::vector<long> coeffs) {
    std::vector<Rat> c;
    for (long v : coeffs) c.emplace_back(v);
    return QPoly(std::move(c));
}

FieldPtr cubic() { return NumberField::create(qp({-1, -1, 0, 1})); }
FieldPtr quintic() { return NumberField::create(qp({-1, -1, 0, 0, 0, 1})); }
FieldPtr sextic() { return NumberField::create(qp({-1, 0, -1, 0, 0, 0, 1})); }

void BM_element_multiply(benchmark::State& state) {
    FieldPtr f = quintic();
    FieldElement a(f, {Rat(1, 3), Rat(2), Rat(-1), Rat(5, 7), Rat(0)});
    FieldElement b(f, {Rat(2), Rat(-1, 2), Rat(3), Rat(1), Rat(-4)});
    for (auto _ : state) benchmark::DoNotOptimize(a * b);
}
BENCHMARK(BM_element_multiply);

void BM_minimal_polynomial(benchmark::State& state) {
    FieldPtr f = quintic();
    FieldElement x = FieldElement::generator(f);
    FieldElement u = x * x * x - x + FieldElement::one(f);
    for (auto _ : state) benchmark::DoNotOptimize(minimal_polynomial(u));
}
BENCHMARK(BM_minimal_polynomial);

void BM_isolate_quintic(benchmark::State& state) {
    FieldPtr f = quintic();
    for (auto _ : state) benchmark::DoNotOptimize(EmbeddingSet::isolate(f, state.range(0)));
}
BENCHMARK(BM_isolate_quintic)->Arg(64)->Arg(256)->Arg(1024)->Unit(benchmark::kMillisecond);

void BM_evaluate(benchmark::State& state) {
    FieldPtr f = quintic();
    EmbeddingSet emb = EmbeddingSet::isolate(f, 128);
    FieldElement x = FieldElement::generator(f);
    FieldElement u = x * x - FieldElement::one(f);
    for (auto _ : state) benchmark::DoNotOptimize(emb.evaluate(u, 2, state.range(0)));
}
BENCHMARK(BM_evaluate)->Arg(128)->Arg(512);

void BM_decide_abs_equal(benchmark::State& state) {
    FieldPtr f = sextic();
    EmbeddingSet emb = EmbeddingSet::isolate(f, 128);
    FieldElement x = FieldElement::generator(f);
    for (auto _ : state)
        benchmark::DoNotOptimize(decide_abs_equal(x, 3, 4, emb, {128, 16384}));
}
BENCHMARK(BM_decide_abs_equal)->Unit(benchmark::kMillisecond);

void BM_log_embedding(benchmark::State& state) {
    FieldPtr f = cubic();
    EmbeddingSet emb = EmbeddingSet::isolate(f, 128);
    FieldElement x = FieldElement::generator(f);
    for (auto _ : state)
        benchmark::DoNotOptimize(log_embedding(x, emb, {state.range(0), 16384}));
}
BENCHMARK(BM_log_embedding)->Arg(128)->Arg(512);

void BM_subgroup_rank(benchmark::State& state) {
    FieldPtr f = quintic();
    EmbeddingSet emb = EmbeddingSet::isolate(f, 128);
    FieldElement x = FieldElement::generator(f);
    FieldElement u = x * x + FieldElement::one(f);
    UnitSubgroup g = UnitSubgroup::create_units_only({x, u, x * u}, emb);
    for (auto _ : state)
        benchmark::DoNotOptimize(subgroup_rank(g, emb, {128, 16384}));
}
BENCHMARK(BM_subgroup_rank)->Unit(benchmark::kMillisecond);

void BM_report_render(benchmark::State& state) {
    io::InputSpec spec;
    spec.minpoly = qp({-1, -1, 0, 1});
    spec.generators = {{Rat(0), Rat(1), Rat(0)}};
    io::RunResult r = io::run_lck_check(spec, {});
    for (auto _ : state) benchmark::DoNotOptimize(io::render_report(r.report));
}
BENCHMARK(BM_report_render);

} // namespace

BENCHMARK_MAIN();
