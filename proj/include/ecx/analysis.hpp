/*!
  \file analysis.hpp
  \brief Lower-bound machinery: exact small-circuit oracle, energy
         inequalities, circuit-to-tree analysis and sensitive flip paths
*/

#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <optional>
#include <queue>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "circuit.hpp"
#include "decision_tree.hpp"
#include "measures.hpp"
#include "rewrite.hpp"
#include "simulate.hpp"
#include "truth_table.hpp"

namespace ecx
{

/*! \brief Smallest k with 4^k >= m, i.e. ceil(log2(m) / 2) for m >= 1. */
inline uint32_t half_log2_ceil( uint64_t m )
{
  uint32_t k = 0;
  uint64_t p = 1;
  while ( p < m )
  {
    p <<= 2;
    ++k;
  }
  return k;
}

inline uint32_t ceil_div3( uint32_t v ) { return ( v + 2u ) / 3u; }

/*! \brief True iff `f` is a constant or a positive literal (realizable without inner gates). */
inline bool is_zero_gate_function( truth_table const& f )
{
  if ( f.is_constant() )
  {
    return true;
  }
  for ( uint32_t v = 0; v < f.num_vars(); ++v )
  {
    if ( f == literal_fn( f.num_vars(), v ) )
    {
      return true;
    }
  }
  return false;
}

/*!
  \brief Proven lower bound on the energy complexity of `f`.

  Zero for constants and positive literals. Otherwise the output is an inner
  gate that fires wherever f = 1, so at least 1, and at least
  ceil(psens/3) and ceil(log2(m)/2) for m relevant variables.
*/
inline uint32_t energy_lower_bound( truth_table const& f )
{
  if ( is_zero_gate_function( f ) )
  {
    return 0u;
  }
  auto const m = dependent_vars( f ).size();
  return std::max( { 1u, ceil_div3( positive_sensitivity( f ) ), half_log2_ceil( m ) } );
}

struct oracle_limits
{
  uint32_t max_vars = 3u;
  uint32_t max_gates = 7u;
};

struct oracle_result
{
  uint32_t lower = 0;
  /* meaningful only when found */
  uint32_t upper = 0;
  bool found = false;
  bool certified = false;
  std::optional<circuit> witness;
  uint64_t states_explored = 0;
};

namespace detail
{

/* energy of a set of gate tables: the most gates simultaneously at 1 */
inline uint32_t set_energy( std::vector<uint64_t> const& tables, uint32_t num_vars )
{
  uint32_t best = 0;
  for ( uint64_t x = 0; x < ( uint64_t( 1 ) << num_vars ); ++x )
  {
    uint32_t e = 0;
    for ( auto t : tables )
    {
      e += uint32_t( ( t >> x ) & 1u );
    }
    best = std::max( best, e );
  }
  return best;
}

inline uint64_t table_bits( truth_table const& f ) { return f.words()[0]; }

/* rebuilds a circuit realizing every table in `tables` (each derivable from the base and earlier ones) */
inline circuit realize_tables( std::vector<uint64_t> const& tables, uint64_t target, uint32_t num_vars )
{
  auto const mask = detail::word_mask( num_vars );
  circuit_builder b( num_vars );
  std::vector<std::pair<uint64_t, gate_id>> built;
  for ( uint32_t i = 0; i < num_vars; ++i )
  {
    built.emplace_back( detail::projections[i] & mask, b.add_input( i ) );
  }
  built.emplace_back( 0u, b.add_constant( false ) );
  built.emplace_back( mask, b.add_constant( true ) );

  std::vector<uint64_t> todo = tables;
  while ( !todo.empty() )
  {
    bool progress = false;
    for ( auto it = todo.begin(); it != todo.end() && !progress; ++it )
    {
      auto const t = *it;
      std::optional<gate_id> g;
      for ( std::size_t i = 0; i < built.size() && !g; ++i )
      {
        if ( ( ~built[i].first & mask ) == t )
        {
          g = b.add_not( built[i].second );
        }
        for ( std::size_t j = i + 1u; j < built.size() && !g; ++j )
        {
          if ( ( built[i].first & built[j].first ) == t )
          {
            g = b.add_and( built[i].second, built[j].second );
          }
          else if ( ( built[i].first | built[j].first ) == t )
          {
            g = b.add_or( built[i].second, built[j].second );
          }
        }
      }
      if ( g )
      {
        built.emplace_back( t, *g );
        todo.erase( it );
        progress = true;
      }
    }
    if ( !progress )
    {
      throw domain_error( "internal: table set is not derivable" );
    }
  }
  auto const out = std::find_if( built.begin(), built.end(), [&]( auto const& p ) { return p.first == target; } );
  return prune_dead( std::move( b ).build( out->second ) );
}

} // namespace detail

/*!
  \brief Exhaustive search for the least-energy circuit of `f` within `max_gates` gates.

  The energy of a circuit depends only on the set of functions its inner
  gates compute, so the search runs over such sets, grown one derivable
  function at a time (NOT of one available node, AND/OR of two). A gate
  computing the same function as an available node would only add energy
  and is skipped; sets whose energy already reaches the best found are cut.
  Levels are processed in sorted order, so the witness is deterministic.
  The search stops early once the best found meets `energy_lower_bound`.
*/
inline oracle_result brute_force_ec( truth_table const& f, uint32_t max_gates, oracle_limits const& limits = {} )
{
  if ( f.num_vars() > limits.max_vars )
  {
    throw cap_exceeded( "oracle limited to " + std::to_string( limits.max_vars ) + " variables, function has " + std::to_string( f.num_vars() ) );
  }
  if ( max_gates > limits.max_gates )
  {
    throw cap_exceeded( "oracle limited to " + std::to_string( limits.max_gates ) + " gates, asked for " + std::to_string( max_gates ) );
  }
  auto const n = f.num_vars();
  auto const mask = detail::word_mask( n );
  auto const target = detail::table_bits( f );

  oracle_result r;
  r.lower = energy_lower_bound( f );

  std::vector<uint64_t> base;
  for ( uint32_t i = 0; i < n; ++i )
  {
    base.push_back( detail::projections[i] & mask );
  }
  base.push_back( 0u );
  base.push_back( mask );

  if ( std::find( base.begin(), base.end(), target ) != base.end() )
  {
    r.found = true;
    r.upper = 0u;
    r.witness = detail::realize_tables( {}, target, n );
    r.certified = r.lower == r.upper;
    return r;
  }

  auto best = std::numeric_limits<uint32_t>::max();
  std::vector<uint64_t> best_set;
  std::set<std::vector<uint64_t>> level{ {} };
  for ( uint32_t k = 1; k <= max_gates && !level.empty() && best > r.lower; ++k )
  {
    std::set<std::vector<uint64_t>> next;
    for ( auto const& s : level )
    {
      ++r.states_explored;
      auto avail = base;
      avail.insert( avail.end(), s.begin(), s.end() );

      std::vector<uint64_t> cands;
      for ( std::size_t i = 0; i < avail.size(); ++i )
      {
        cands.push_back( ~avail[i] & mask );
        for ( std::size_t j = i + 1u; j < avail.size(); ++j )
        {
          cands.push_back( avail[i] & avail[j] );
          cands.push_back( avail[i] | avail[j] );
        }
      }
      for ( auto t : cands )
      {
        if ( std::find( avail.begin(), avail.end(), t ) != avail.end() )
        {
          continue;
        }
        auto grown = s;
        grown.insert( std::lower_bound( grown.begin(), grown.end(), t ), t );
        if ( next.contains( grown ) )
        {
          continue;
        }
        auto const e = detail::set_energy( grown, n );
        if ( e >= best )
        {
          continue;
        }
        if ( t == target )
        {
          best = e;
          best_set = std::move( grown );
          continue;
        }
        next.insert( std::move( grown ) );
      }
    }
    level = std::move( next );
  }

  if ( best != std::numeric_limits<uint32_t>::max() )
  {
    r.found = true;
    r.witness = detail::realize_tables( best_set, target, n );
    r.upper = max_energy( *r.witness ).max_energy;
    r.certified = r.lower == r.upper;
  }
  return r;
}

/*! \brief Outcome of an inequality check, with the quantities involved in a fixed order. */
struct check_report
{
  std::string check;
  bool passed = false;
  std::vector<std::pair<std::string, int64_t>> fields;

  int64_t field( std::string const& key ) const
  {
    for ( auto const& [k, v] : fields )
    {
      if ( k == key )
      {
        return v;
      }
    }
    throw domain_error( "report has no field '" + key + "'" );
  }
};

/*!
  \brief A monotone circuit depending on m variables has energy at least m - 1.

  Constants are folded away first; afterwards every inner gate is 1 on the
  all-ones input, which is checked alongside the inequality.
*/
inline check_report verify_lemma4( circuit const& c, uint32_t cap = default_exhaustive_cap )
{
  if ( !is_monotone( c ) )
  {
    throw domain_error( "circuit has " + std::to_string( count_not_gates( c ) ) + " NOT gates, expected a monotone circuit" );
  }
  if ( c.num_vars() > cap )
  {
    throw cap_exceeded( "exhaustive energy limited to " + std::to_string( cap ) + " variables" );
  }
  auto const folded = restrict_circuit( c, {} );
  auto const m = int64_t( dependent_vars( to_truth_table( c ) ).size() );
  auto const inner = int64_t( folded.num_inner_gates() );
  auto const all_ones = int64_t( energy( folded, assignment( c.num_vars(), true ) ) );
  auto const ec = int64_t( max_energy( folded, exhaustive_search{ cap } ).max_energy );
  auto const ec_original = int64_t( max_energy( c, exhaustive_search{ cap } ).max_energy );
  return { "lemma4",
           all_ones == inner && ec >= m - 1 && ec_original >= ec,
           { { "m", m }, { "inner_gates", inner }, { "energy_all_ones", all_ones }, { "ec", ec }, { "ec_original", ec_original } } };
}

/*! \brief After `normalize_negations`, energy is at least the number of NOT gates. */
inline check_report verify_lemma5( circuit const& c, uint32_t cap = default_exhaustive_cap )
{
  if ( c.num_vars() > cap )
  {
    throw cap_exceeded( "exhaustive energy limited to " + std::to_string( cap ) + " variables" );
  }
  auto const normalized = normalize_negations( c );
  auto const k = int64_t( count_not_gates( normalized ) );
  auto const ec = int64_t( max_energy( normalized, exhaustive_search{ cap } ).max_energy );
  return { "lemma5", ec >= k, { { "not_gates", k }, { "ec", ec } } };
}

/*!
  \brief Energy against ceil(log2(m)/2) and ceil(psens/3).

  A circuit whose output is an input gate has energy 0 while computing a
  literal of positive sensitivity 1, so the psens bound applies only when
  the output is an inner or constant gate.
*/
inline check_report theorem_bounds_audit( circuit const& c, uint32_t cap = default_exhaustive_cap )
{
  if ( c.num_vars() > cap || c.num_vars() > max_table_vars )
  {
    throw cap_exceeded( "exhaustive energy limited to " + std::to_string( std::min( cap, max_table_vars ) ) + " variables" );
  }
  auto const f = to_truth_table( c );
  auto const m = dependent_vars( f ).size();
  auto const ec = int64_t( max_energy( c, exhaustive_search{ cap } ).max_energy );
  auto const log_bound = int64_t( m == 0u ? 0u : half_log2_ceil( m ) );
  bool const wire = c[c.output()].kind == gate_kind::input;
  auto const psens = int64_t( positive_sensitivity( f ) );
  auto const psens_bound = wire ? 0 : int64_t( ceil_div3( uint32_t( psens ) ) );
  return { "bounds",
           ec >= log_bound && ec >= psens_bound,
           { { "m", int64_t( m ) }, { "psens", psens }, { "ec", ec }, { "log_bound", log_bound }, { "psens_bound", psens_bound } } };
}

struct tree_analysis
{
  std::vector<gate_id> neg_order;
  /* blocks[i] for the i-th NOT gate, then the remainder; variables ascending */
  std::vector<std::vector<uint32_t>> partition;
  decision_tree induced_tree;
  uint32_t induced_depth = 0;
  uint32_t optimal_depth = 0;
  bool equivalent = false;
};

inline constexpr uint32_t tree_analysis_cap = 12u;

/*!
  \brief Decision tree induced by the NOT gates of a circuit.

  The i-th NOT gate (in id order, which is topological) contributes the
  variables it covers that no earlier NOT gate covers; the leftover
  variables form the last block. The blocks in order give a query order,
  whose complete tree is simplified into `induced_tree`.
*/
inline tree_analysis circuit_to_tree( circuit const& c, uint32_t cap = tree_analysis_cap )
{
  if ( c.num_vars() > cap )
  {
    throw cap_exceeded( "tree analysis limited to " + std::to_string( cap ) + " variables" );
  }
  tree_analysis r;
  std::vector<bool> taken( c.num_vars() );
  for ( gate_id g = 0; g < c.num_gates(); ++g )
  {
    if ( c[g].kind != gate_kind::not_ )
    {
      continue;
    }
    r.neg_order.push_back( g );
    std::vector<uint32_t> block;
    for ( auto v : covered_inputs( c, g ) )
    {
      if ( !taken[v] )
      {
        taken[v] = true;
        block.push_back( v );
      }
    }
    r.partition.push_back( std::move( block ) );
  }
  std::vector<uint32_t> rest;
  for ( uint32_t v = 0; v < c.num_vars(); ++v )
  {
    if ( !taken[v] )
    {
      rest.push_back( v );
    }
  }
  r.partition.push_back( std::move( rest ) );

  std::vector<uint32_t> order;
  for ( auto const& block : r.partition )
  {
    order.insert( order.end(), block.begin(), block.end() );
  }
  auto const f = to_truth_table( c );
  r.induced_tree = simplify( full_tree_from_order( f, order ) );
  r.induced_depth = r.induced_tree.depth();
  r.optimal_depth = decision_tree_complexity( f ).depth;
  r.equivalent = to_truth_table( r.induced_tree, c.num_vars() ) == f;
  return r;
}

struct restriction_round
{
  /* variables fixed in this round, those covered by the first NOT gate */
  std::vector<uint32_t> fixed;
  circuit result;
  uint32_t energy = 0;
  std::size_t not_gates = 0;
};

/*!
  \brief Repeatedly fixes the variables covered by the first NOT gate to `value`.

  Constants are folded after every step, so the first NOT gate disappears
  each round and the loop ends at a monotone circuit. Round 0 is the input
  circuit after constant folding.
*/
inline std::vector<restriction_round> restriction_rounds( circuit const& c, bool value, uint32_t cap = tree_analysis_cap )
{
  if ( c.num_vars() > cap )
  {
    throw cap_exceeded( "restriction rounds limited to " + std::to_string( cap ) + " variables" );
  }
  std::vector<restriction_round> rounds;
  auto current = restrict_circuit( c, {} );
  partial_assignment fixed( c.num_vars() );
  std::vector<uint32_t> step;
  while ( true )
  {
    rounds.push_back( { step, current, max_energy( current ).max_energy, count_not_gates( current ) } );
    auto const a = circuit_to_tree( current, cap );
    if ( a.neg_order.empty() )
    {
      break;
    }
    step = a.partition.front();
    for ( auto v : step )
    {
      fixed[v] = value;
    }
    current = restrict_circuit( c, fixed );
  }
  return rounds;
}

struct path_witness
{
  /* from an input gate of the flipped variable to the output */
  std::vector<gate_id> path;
  uint32_t length = 0;
  uint32_t energy_x = 0;
  uint32_t energy_flipped = 0;
};

/*!
  \brief A wire path from input `var` to the output along which every gate
  changes value when `var` is flipped in `x`.

  Breadth-first over gates whose value differs, so the path is a shortest
  one; ties go to smaller gate ids.
*/
inline path_witness sensitive_path( circuit const& c, assignment const& x, uint32_t var )
{
  if ( var >= c.num_vars() )
  {
    throw domain_error( "variable index " + std::to_string( var ) + " out of range for " + std::to_string( c.num_vars() ) + " variables" );
  }
  auto y = x;
  if ( y.size() != c.num_vars() )
  {
    throw domain_error( "input has " + std::to_string( x.size() ) + " bits, circuit has " + std::to_string( c.num_vars() ) + " variables" );
  }
  y[var] = !y[var];
  auto const ex = evaluate( c, x );
  auto const ey = evaluate( c, y );
  if ( ex.output == ey.output )
  {
    throw domain_error( "flipping x" + std::to_string( var + 1u ) + " does not change the output" );
  }

  std::vector<std::vector<gate_id>> fanout( c.num_gates() );
  for ( gate_id g = 0; g < c.num_gates(); ++g )
  {
    auto const& gt = c[g];
    if ( gt.fanin_size() >= 1u )
    {
      fanout[gt.a].push_back( g );
    }
    if ( gt.fanin_size() == 2u && gt.b != gt.a )
    {
      fanout[gt.b].push_back( g );
    }
  }
  auto differs = [&]( gate_id g ) { return ex.values[g] != ey.values[g]; };

  std::vector<std::optional<gate_id>> parent( c.num_gates() );
  std::vector<bool> seen( c.num_gates() );
  std::queue<gate_id> queue;
  for ( gate_id g = 0; g < c.num_gates(); ++g )
  {
    if ( c[g].kind == gate_kind::input && c[g].a == var )
    {
      seen[g] = true;
      queue.push( g );
    }
  }
  while ( !queue.empty() && !seen[c.output()] )
  {
    auto const g = queue.front();
    queue.pop();
    for ( auto h : fanout[g] )
    {
      if ( !seen[h] && differs( h ) )
      {
        seen[h] = true;
        parent[h] = g;
        queue.push( h );
      }
    }
  }
  if ( !seen[c.output()] )
  {
    throw domain_error( "internal: no flip path reaches the output" );
  }

  path_witness w;
  for ( std::optional<gate_id> g = c.output(); g; g = parent[*g] )
  {
    w.path.push_back( *g );
  }
  std::reverse( w.path.begin(), w.path.end() );
  w.length = static_cast<uint32_t>( std::count_if( w.path.begin(), w.path.end(), [&]( gate_id g ) { return c[g].is_inner(); } ) );
  w.energy_x = energy( c, x );
  w.energy_flipped = energy( c, y );
  return w;
}

} // namespace ecx
