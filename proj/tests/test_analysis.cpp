#include <gtest/gtest.h>

#include "corpus.hpp"
#include "oracles.hpp"

using namespace ecx;

namespace
{

truth_table two_var( uint32_t code )
{
  return truth_table::from_function( 2, [code]( uint64_t k ) { return ( ( code >> k ) & 1u ) != 0u; } );
}

/* least energy over all gate sequences of length <= max_gates ending in the output, by plain enumeration */
std::optional<uint32_t> enumerate_sequences( truth_table const& f, uint32_t max_gates )
{
  auto const n = f.num_vars();
  std::optional<uint32_t> best;
  std::vector<gate> gates;
  for ( uint32_t i = 0; i < n; ++i )
  {
    gates.push_back( gate::input( i ) );
  }
  gates.push_back( gate::constant( false ) );
  gates.push_back( gate::constant( true ) );
  auto const base = gates.size();
  for ( gate_id g = 0; g < base; ++g )
  {
    if ( test::same_function( circuit( n, gates, g ), f ) )
    {
      return 0u;
    }
  }
  auto rec = [&]( auto&& self ) -> void {
    auto const c = circuit( n, gates, gate_id( gates.size() - 1u ) );
    if ( gates.size() > base && test::same_function( c, f ) )
    {
      auto const e = test::naive_ec( c );
      best = best ? std::min( *best, e ) : e;
    }
    if ( gates.size() - base == max_gates )
    {
      return;
    }
    auto const m = gate_id( gates.size() );
    for ( gate_id a = 0; a < m; ++a )
    {
      gates.push_back( gate::not_of( a ) );
      self( self );
      gates.pop_back();
      for ( gate_id b = a; b < m; ++b )
      {
        for ( auto const& g : { gate::and_of( a, b ), gate::or_of( a, b ) } )
        {
          gates.push_back( g );
          self( self );
          gates.pop_back();
        }
      }
    }
  };
  rec( rec );
  return best;
}

circuit not_x1()
{
  return circuit( 1, { gate::input( 0 ), gate::not_of( 0 ) }, 1 );
}

circuit and2()
{
  return circuit( 2, { gate::input( 0 ), gate::input( 1 ), gate::and_of( 0, 1 ) }, 2 );
}

} // namespace

TEST( analysis, lower_bound_pieces )
{
  EXPECT_EQ( half_log2_ceil( 1 ), 0u );
  EXPECT_EQ( half_log2_ceil( 2 ), 1u );
  EXPECT_EQ( half_log2_ceil( 4 ), 1u );
  EXPECT_EQ( half_log2_ceil( 5 ), 2u );
  EXPECT_EQ( half_log2_ceil( 6 ), 2u );
  EXPECT_EQ( half_log2_ceil( 16 ), 2u );
  EXPECT_EQ( half_log2_ceil( 17 ), 3u );
  EXPECT_EQ( ceil_div3( 0 ), 0u );
  EXPECT_EQ( ceil_div3( 1 ), 1u );
  EXPECT_EQ( ceil_div3( 3 ), 1u );
  EXPECT_EQ( ceil_div3( 4 ), 2u );
  EXPECT_EQ( energy_lower_bound( literal_fn( 2, 1 ) ), 0u );
  EXPECT_EQ( energy_lower_bound( literal_fn( 2, 1, false ) ), 1u );
  EXPECT_EQ( energy_lower_bound( constant_fn( 2, true ) ), 0u );
}

TEST( analysis, oracle_examples )
{
  auto const a = brute_force_ec( and_fn( 2 ), 1 );
  EXPECT_TRUE( a.found );
  EXPECT_EQ( a.upper, 1u );
  EXPECT_EQ( a.lower, 1u );
  EXPECT_TRUE( a.certified );
  ASSERT_TRUE( a.witness );
  EXPECT_EQ( a.witness->num_inner_gates(), 1u );
  EXPECT_EQ( ( *a.witness )[a.witness->output()].kind, gate_kind::and_ );

  auto const z = brute_force_ec( constant_fn( 2, false ), 6 );
  EXPECT_EQ( z.upper, 0u );
  EXPECT_TRUE( z.certified );
  EXPECT_EQ( ( *z.witness )[z.witness->output()], gate::constant( false ) );

  auto const x = brute_force_ec( xor_fn( 2 ), 6 );
  ASSERT_TRUE( x.found );
  EXPECT_LE( x.lower, x.upper );
  EXPECT_EQ( to_truth_table( *x.witness ), xor_fn( 2 ) );

  EXPECT_FALSE( brute_force_ec( xor_fn( 2 ), 2 ).found );
  EXPECT_THROW( brute_force_ec( truth_table( 4 ), 3 ), cap_exceeded );
  EXPECT_THROW( brute_force_ec( truth_table( 2 ), 8 ), cap_exceeded );
  EXPECT_NO_THROW( brute_force_ec( truth_table( 2 ), 8, { 3u, 8u } ) );
}

TEST( analysis, oracle_agrees_with_sequence_enumeration )
{
  for ( uint32_t code = 0; code < 16; ++code )
  {
    auto const f = two_var( code );
    for ( uint32_t g = 0; g <= 3; ++g )
    {
      auto const r = brute_force_ec( f, g );
      auto const e = enumerate_sequences( f, g );
      ASSERT_EQ( r.found, e.has_value() ) << f.to_string() << " gates " << g;
      if ( e )
      {
        ASSERT_EQ( r.upper, *e ) << f.to_string() << " gates " << g;
      }
    }
  }
}

TEST( analysis, oracle_soundness_and_monotonicity )
{
  std::mt19937_64 rng( 91 );
  std::vector<truth_table> fs;
  for ( uint32_t code = 0; code < 16; ++code )
  {
    fs.push_back( two_var( code ) );
  }
  for ( int i = 0; i < 6; ++i )
  {
    fs.push_back( test::random_function( 3, rng ) );
  }
  fs.push_back( or_fn( 3 ) );
  fs.push_back( and_fn( 3 ) );
  for ( auto const& f : fs )
  {
    std::optional<uint32_t> previous;
    for ( uint32_t g = 0; g <= ( f.num_vars() == 2u ? 7u : 6u ); ++g )
    {
      auto const r = brute_force_ec( f, g );
      if ( previous )
      {
        ASSERT_TRUE( r.found );
        ASSERT_LE( r.upper, *previous ) << f.to_string();
      }
      if ( r.found )
      {
        ASSERT_EQ( to_truth_table( *r.witness ), f );
        ASSERT_EQ( max_energy( *r.witness ).max_energy, r.upper );
        ASSERT_EQ( r.certified, r.lower == r.upper );
        if ( r.certified )
        {
          ASSERT_LE( r.lower, r.upper );
        }
        previous = r.upper;
      }
    }
  }
}

TEST( analysis, lemma4_examples )
{
  circuit_builder b( 8 );
  std::vector<gate_id> in;
  for ( uint32_t i = 0; i < 8; ++i )
  {
    in.push_back( b.add_input( i ) );
  }
  auto const or8 = std::move( b ).build( or_gadget_onehot( b, in ) );
  auto const r = verify_lemma4( or8 );
  EXPECT_TRUE( r.passed );
  EXPECT_EQ( r.field( "m" ), 8 );
  EXPECT_EQ( r.field( "inner_gates" ), 7 );
  EXPECT_EQ( r.field( "energy_all_ones" ), 7 );
  EXPECT_EQ( r.field( "ec" ), 7 );

  auto const a = verify_lemma4( and2() );
  EXPECT_TRUE( a.passed );
  EXPECT_EQ( a.field( "ec" ), 1 );
  EXPECT_THROW( verify_lemma4( not_x1() ), domain_error );
  EXPECT_THROW( r.field( "missing" ), domain_error );
}

TEST( analysis, lemma4_on_monotone_circuits_with_constants )
{
  std::mt19937_64 rng( 92 );
  for ( int trial = 0; trial < 100; ++trial )
  {
    auto const c = test::random_circuit( { 1u + uint32_t( trial % 8 ), 1u + uint32_t( trial % 25 ), true, trial % 2 == 0 }, rng );
    auto const r = verify_lemma4( c );
    ASSERT_TRUE( r.passed ) << to_netlist( c );
  }
}

TEST( analysis, lemma5_examples )
{
  auto const r = verify_lemma5( not_x1() );
  EXPECT_TRUE( r.passed );
  EXPECT_EQ( r.field( "not_gates" ), 1 );
  EXPECT_EQ( r.field( "ec" ), 1 );

  auto const s = verify_lemma5( build_or_sqrt( 9 ) );
  EXPECT_TRUE( s.passed );
  EXPECT_EQ( s.field( "not_gates" ), 2 );
  EXPECT_GE( s.field( "ec" ), 2 );

  EXPECT_EQ( verify_lemma5( and2() ).field( "not_gates" ), 0 );
}

TEST( analysis, bounds_examples )
{
  auto const k = theorem_bounds_audit( circuit( 3, { gate::constant( true ) }, 0 ) );
  EXPECT_TRUE( k.passed );
  EXPECT_EQ( k.field( "log_bound" ), 0 );
  EXPECT_EQ( k.field( "psens_bound" ), 0 );

  auto const a = theorem_bounds_audit( build_addr( 2 ) );
  EXPECT_TRUE( a.passed );
  EXPECT_EQ( a.field( "m" ), 6 );
  EXPECT_EQ( a.field( "log_bound" ), 2 );

  auto const o = theorem_bounds_audit( build_or_sqrt( 16 ) );
  EXPECT_TRUE( o.passed );
  EXPECT_EQ( o.field( "psens" ), 1 );
  EXPECT_EQ( o.field( "psens_bound" ), 1 );

  auto const wire = theorem_bounds_audit( circuit( 2, { gate::input( 0 ), gate::input( 1 ) }, 1 ) );
  EXPECT_TRUE( wire.passed );
  EXPECT_EQ( wire.field( "psens" ), 1 );
  EXPECT_EQ( wire.field( "psens_bound" ), 0 );
}

TEST( analysis, theorems_hold_on_random_normalized_circuits )
{
  std::mt19937_64 rng( 93 );
  for ( int trial = 0; trial < 150; ++trial )
  {
    auto const c = normalize_negations(
        test::random_circuit( { 1u + uint32_t( trial % 10 ), 1u + uint32_t( trial % 30 ), false, trial % 3 == 0 }, rng ) );
    ASSERT_TRUE( verify_lemma5( c ).passed ) << to_netlist( c );
    ASSERT_TRUE( theorem_bounds_audit( c ).passed ) << to_netlist( c );
  }
}

TEST( analysis, circuit_to_tree_examples )
{
  auto const mono = circuit_to_tree( and2() );
  EXPECT_TRUE( mono.neg_order.empty() );
  ASSERT_EQ( mono.partition.size(), 1u );
  EXPECT_EQ( mono.partition[0], ( std::vector<uint32_t>{ 0, 1 } ) );
  EXPECT_EQ( mono.induced_tree.to_string(), "(x1 0 (x2 0 1))" );

  circuit const nand( 2, { gate::input( 0 ), gate::input( 1 ), gate::and_of( 0, 1 ), gate::not_of( 2 ) }, 3 );
  auto const r = circuit_to_tree( nand );
  EXPECT_EQ( r.neg_order, ( std::vector<gate_id>{ 3 } ) );
  ASSERT_EQ( r.partition.size(), 2u );
  EXPECT_EQ( r.partition[0], ( std::vector<uint32_t>{ 0, 1 } ) );
  EXPECT_TRUE( r.partition[1].empty() );
  EXPECT_TRUE( r.equivalent );

  /* the first negation covers x1, x2; the second covers x1..x4; x5 is covered by none */
  circuit_builder b( 5 );
  std::vector<gate_id> x;
  for ( uint32_t i = 0; i < 5; ++i )
  {
    x.push_back( b.add_input( i ) );
  }
  auto const n1 = b.add_not( b.add_or( x[0], x[1] ) );
  auto const n2 = b.add_not( b.add_and( b.add_or( n1, x[2] ), x[3] ) );
  auto const c = std::move( b ).build( b.add_or( n2, x[4] ) );
  auto const t = circuit_to_tree( c );
  ASSERT_EQ( t.partition.size(), 3u );
  EXPECT_EQ( t.partition[0], ( std::vector<uint32_t>{ 0, 1 } ) );
  EXPECT_EQ( t.partition[1], ( std::vector<uint32_t>{ 2, 3 } ) );
  EXPECT_EQ( t.partition[2], ( std::vector<uint32_t>{ 4 } ) );
  EXPECT_TRUE( t.equivalent );
  EXPECT_GE( t.induced_depth, t.optimal_depth );
  EXPECT_THROW( circuit_to_tree( circuit( 13, { gate::constant( false ) }, 0 ) ), cap_exceeded );
}

TEST( analysis, circuit_to_tree_on_corpus )
{
  std::mt19937_64 rng( 94 );
  for ( int trial = 0; trial < 80; ++trial )
  {
    auto const c = test::random_circuit( { 1u + uint32_t( trial % 8 ), 2u + uint32_t( trial % 30 ), false, trial % 4 == 0 }, rng );
    auto const r = circuit_to_tree( c );
    ASSERT_TRUE( r.equivalent );
    ASSERT_EQ( to_truth_table( r.induced_tree, c.num_vars() ), to_truth_table( c ) );
    ASSERT_GE( r.induced_depth, r.optimal_depth );
    std::vector<uint32_t> all;
    for ( auto const& block : r.partition )
    {
      ASSERT_TRUE( std::is_sorted( block.begin(), block.end() ) );
      all.insert( all.end(), block.begin(), block.end() );
    }
    std::sort( all.begin(), all.end() );
    ASSERT_EQ( all.size(), c.num_vars() );
    for ( uint32_t v = 0; v < c.num_vars(); ++v )
    {
      ASSERT_EQ( all[v], v );
    }
    ASSERT_TRUE( std::is_sorted( r.neg_order.begin(), r.neg_order.end() ) );
  }
}

TEST( analysis, sensitive_path_examples )
{
  auto const w = sensitive_path( not_x1(), { false }, 0 );
  EXPECT_EQ( w.path, ( std::vector<gate_id>{ 0, 1 } ) );
  EXPECT_EQ( w.length, 1u );
  EXPECT_EQ( w.energy_x, 1u );
  EXPECT_EQ( w.energy_flipped, 0u );

  auto const a = sensitive_path( and2(), { true, true }, 0 );
  EXPECT_EQ( a.path, ( std::vector<gate_id>{ 0, 2 } ) );
  EXPECT_EQ( a.length, 1u );

  auto const or2 = compile_linear( decision_tree::from_string( "(x1 (x2 0 1) 1)" ), 2 );
  auto const o = sensitive_path( or2, { false, false }, 0 );
  EXPECT_GE( o.length, 1u );
  EXPECT_GE( o.energy_x + o.energy_flipped, o.length );

  EXPECT_THROW( sensitive_path( and2(), { false, false }, 0 ), domain_error );
  EXPECT_THROW( sensitive_path( and2(), { true, true }, 2 ), domain_error );
  EXPECT_THROW( sensitive_path( and2(), { true }, 0 ), domain_error );
}

TEST( analysis, sensitive_paths_are_valid_flip_paths )
{
  std::mt19937_64 rng( 95 );
  int found = 0;
  while ( found < 200 )
  {
    auto const n = 1u + uint32_t( rng() % 7u );
    auto const c = test::random_circuit( { n, 1u + uint32_t( rng() % 30u ), false, rng() % 2u == 0u }, rng );
    auto const x = assignment_from_index( n, rng() % ( uint64_t( 1 ) << n ) );
    auto const i = uint32_t( rng() % n );
    auto y = x;
    y[i] = !y[i];
    auto const ex = evaluate( c, x ), ey = evaluate( c, y );
    if ( ex.output == ey.output )
    {
      continue;
    }
    ++found;
    auto const w = sensitive_path( c, x, i );
    ASSERT_FALSE( w.path.empty() );
    ASSERT_EQ( c[w.path.front()], gate::input( i ) );
    ASSERT_EQ( w.path.back(), c.output() );
    for ( std::size_t j = 0; j < w.path.size(); ++j )
    {
      ASSERT_NE( ex.values[w.path[j]], ey.values[w.path[j]] );
      if ( j > 0u )
      {
        auto const& gt = c[w.path[j]];
        ASSERT_TRUE( ( gt.fanin_size() >= 1u && gt.a == w.path[j - 1u] ) || ( gt.fanin_size() == 2u && gt.b == w.path[j - 1u] ) );
      }
    }
    ASSERT_GE( w.energy_x + w.energy_flipped, w.length );
    ASSERT_EQ( w.length, w.path.size() - 1u );
  }
}

TEST( analysis, restriction_rounds_remove_one_negation_at_a_time )
{
  std::mt19937_64 rng( 96 );
  for ( int trial = 0; trial < 40; ++trial )
  {
    auto const n = 1u + uint32_t( trial % 8 );
    auto const c = test::random_circuit( { n, 2u + uint32_t( trial % 30 ), false, trial % 3 == 0 }, rng );
    bool const value = trial % 2 == 1;
    auto const rounds = restriction_rounds( c, value );
    ASSERT_FALSE( rounds.empty() );
    EXPECT_TRUE( rounds.front().fixed.empty() );
    EXPECT_EQ( rounds.back().not_gates, 0u );
    partial_assignment fixed( n );
    for ( std::size_t i = 1; i < rounds.size(); ++i )
    {
      ASSERT_FALSE( rounds[i].fixed.empty() );
      ASSERT_LT( rounds[i].not_gates, rounds[i - 1u].not_gates );
      ASSERT_LE( rounds[i].energy, rounds[i - 1u].energy );
      for ( auto v : rounds[i].fixed )
      {
        ASSERT_FALSE( fixed[v].has_value() );
        fixed[v] = value;
      }
      for ( uint64_t k = 0; k < ( uint64_t( 1 ) << n ); ++k )
      {
        auto x = assignment_from_index( n, k );
        for ( uint32_t j = 0; j < n; ++j )
        {
          if ( fixed[j] )
          {
            x[j] = *fixed[j];
          }
        }
        ASSERT_EQ( evaluate( rounds[i].result, assignment_from_index( n, k ) ).output, evaluate( c, x ).output );
      }
    }
  }
}
