#include "polisim/scheduler.h"
#include "polisim/government.h"
#include "polisim/housing_market.h"

namespace polisim
{

std::string_view phase_name(Phase phase)
{
    switch (phase) {
    case Phase::initial_hiring: return "initial-hiring";
    case Phase::production: return "production";
    case Phase::wages: return "wages";
    case Phase::consumption: return "consumption";
    case Phase::qli: return "qli";
    case Phase::profits: return "profits";
    case Phase::prices: return "prices";
    case Phase::labor_decisions: return "labor-decisions";
    case Phase::matching: return "matching";
    case Phase::housing: return "housing";
    case Phase::stats: return "stats";
    }
    return "?";
}

namespace
{

class Simulation
{
public:
    Simulation(World& world, const Params& params, RngStream& rng, int run_id, const SimulationHooks& hooks)
        : m_world(world)
        , m_model(params.model)
        , m_rng(rng)
        , m_run_id(run_id)
        , m_hooks(hooks)
    {
    }

    SimulationResult run(int num_days)
    {
        for (int day = 0; day < num_days; ++day) {
            const Clock clock{day};
            if (day == 0) {
                initial_hiring(clock);
            }
            production(clock);
            if (clock.month_end()) {
                month_end(clock);
            }
            if (clock.year_end() && m_hooks.on_year) {
                m_hooks.on_year(clock.year());
            }
        }
        return std::move(m_result);
    }

private:
    void mark(Phase phase, const Clock& clock)
    {
        if (m_hooks.on_phase) {
            m_hooks.on_phase(phase, clock, m_world);
        }
    }

    void initial_hiring(const Clock& clock)
    {
        mark(Phase::initial_hiring, clock);
        MatchingBoard board;
        for (const auto& f : m_world.firms) {
            board.vacancies.push_back(f.id);
        }
        board.candidates = register_candidates(m_world.agents);
        match(board);
    }

    void production(const Clock& clock)
    {
        mark(Phase::production, clock);
        for (auto& f : m_world.firms) {
            produce_daily(f, m_world.agents, m_model.alpha);
        }
    }

    void match(MatchingBoard& board)
    {
        auto hires = run_matching(std::move(board), m_world, m_rng);
        if (m_hooks.on_hire) {
            for (const auto& h : hires) {
                m_hooks.on_hire(h);
            }
        }
    }

    void month_end(const Clock& clock)
    {
        mark(Phase::wages, clock);
        for (auto& f : m_world.firms) {
            pay_wages(f, m_world.agents, m_model.wage_base, m_model.alpha, m_hooks.on_wage);
        }

        mark(Phase::consumption, clock);
        for (auto& r : m_world.regions) {
            r.month_tax_collected = 0.0;
        }
        const double gdp = run_goods_market(m_world, m_model.beta, m_model.market_size, m_model.tax_consumption,
                                            m_rng, m_hooks.on_receipt);
        m_gdp_cumulative += gdp;

        // population counted at the end of the previous month
        mark(Phase::qli, clock);
        for (auto& r : m_world.regions) {
            update_qli(r);
        }

        mark(Phase::profits, clock);
        const bool quarter_end = clock.quarter_end();
        for (auto& f : m_world.firms) {
            update_profit(f, quarter_end);
        }
        if (quarter_end) {
            ++m_result.quarters;
        }

        mark(Phase::prices, clock);
        for (auto& f : m_world.firms) {
            update_price(f, m_model.price_change_quantity, m_model.markup);
        }

        mark(Phase::labor_decisions, clock);
        MatchingBoard board;
        for (auto& f : m_world.firms) {
            auto decision = labor_decision(f, m_world.agents, m_model.labor_market_frequency, m_rng);
            if (decision.action == LaborAction::post_vacancy) {
                board.vacancies.push_back(f.id);
            }
        }

        mark(Phase::matching, clock);
        board.candidates = register_candidates(m_world.agents);
        match(board);

        mark(Phase::housing, clock);
        run_housing_market(m_world, m_model.housing_entry_share, m_rng);
        refresh_population(m_world);

        mark(Phase::stats, clock);
        Snapshot s = snapshot(m_world, m_run_id, clock.month(), gdp, m_gdp_cumulative);
        if (m_hooks.on_month) {
            m_hooks.on_month(s);
        }
        m_result.series.push_back(s.run);
        m_result.regions.insert(m_result.regions.end(), s.regions.begin(), s.regions.end());
    }

    World& m_world;
    const ModelParams& m_model;
    RngStream& m_rng;
    int m_run_id;
    const SimulationHooks& m_hooks;
    double m_gdp_cumulative = 0.0;
    SimulationResult m_result;
};

} // namespace

SimulationResult run_simulation(World& world, const Params& params, RngStream& rng, int run_id,
                                const SimulationHooks& hooks)
{
    return Simulation(world, params, rng, run_id, hooks).run(params.sim.num_days);
}

} // namespace polisim
