#include <doctest.h>

#include <cmath>
#include <vector>

#include "maxentloss/errors.hpp"
#include "maxentloss/mem.hpp"
#include "maxentloss/moments.hpp"
#include "maxentloss/runner.hpp"
#include "maxentloss/serialize.hpp"
#include "maxentloss/sme.hpp"

using namespace maxent;

TEST_CASE("moments json round trip") {
    AlphaGrid grid = AlphaGrid::harmonic(4);
    FractionalMoments m{grid,
                        {1.0, 0.4, 0.55, 0.62, 0.7},
                        {1.0, 0.41, 0.56, 0.63, 0.71},
                        3.0,
                        8000};
    FractionalMoments back = moments_from_json(moments_to_json(m));
    CHECK(back.grid.values() == grid.values());
    CHECK(back.mu == m.mu);
    CHECK(back.psi == m.psi);
    CHECK(back.ell == m.ell);
    CHECK(back.n == m.n);
}

TEST_CASE("sme fit json round trip preserves the density") {
    // Moments of f_Y(y) = 2y: E[y^a] = 2/(a+2).
    AlphaGrid grid = AlphaGrid::harmonic(4);
    std::vector<double> mu(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) mu[i] = 2.0 / (grid[i] + 2.0);
    FractionalMoments m{grid, mu, mu, 1.0, 0};
    SmeDensity fit = fit_sme(m);

    SmeDensity back = sme_from_json(sme_to_json(fit));
    CHECK(back.lambda == fit.lambda);
    CHECK(back.residuals == fit.residuals);
    for (double y : {0.1, 0.5, 0.9})
        CHECK(back.density_y(y) == doctest::Approx(fit.density_y(y)).epsilon(1e-15));
}

TEST_CASE("mem fit json round trip preserves masses and design") {
    AlphaGrid grid = AlphaGrid::harmonic(4);
    std::vector<double> mu(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) mu[i] = 2.0 / (grid[i] + 2.0);
    FractionalMoments m{grid, mu, mu, 1.0, 0};
    MemOptions opts;
    opts.M = 40;
    MemSolution fit = fit_mem(m, opts);

    MemSolution back = mem_from_json(mem_to_json(fit));
    CHECK(back.x == fit.x);
    CHECK(back.lambda == fit.lambda);
    CHECK(back.eta == fit.eta);
    CHECK(back.design.M == 40);
    CHECK(back.design.at(2, 17) == fit.design.at(2, 17));
}

TEST_CASE("config json round trip and hashing") {
    RunConfig cfg;
    cfg.spec.model.ell = 4.0;
    cfg.spec.label = "case3";
    cfg.method = "mem";
    cfg.K = 6;
    cfg.M = 120;
    cfg.gammas = {0.9, 0.99};
    cfg.seed = 42;
    cfg.out_dir = "elsewhere";

    RunConfig back = config_from_json_text(config_to_json_text(cfg));
    CHECK(back.spec.model.ell == 4.0);
    CHECK(back.spec.label == "case3");
    CHECK(back.method == "mem");
    CHECK(back.K == 6);
    CHECK(back.M == 120);
    CHECK(back.gammas == cfg.gammas);
    CHECK(back.seed == 42);
    CHECK(back.out_dir == "elsewhere");

    CHECK(config_hash(cfg) == config_hash(back));
    RunConfig other = cfg;
    other.seed = 43;
    CHECK(config_hash(other) != config_hash(cfg));

    // Partial configs inherit defaults; invalid ones are rejected.
    RunConfig sparse = config_from_json_text(R"({"case": {"ell": 2.0}})");
    CHECK(sparse.spec.model.ell == 2.0);
    CHECK(sparse.K == 8);
    CHECK_THROWS_AS(config_from_json_text(R"({"method": "bogus"})"), InputError);
    CHECK_THROWS_AS(config_from_json_text("not json"), InputError);
}
