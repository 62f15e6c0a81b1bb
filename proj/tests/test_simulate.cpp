#include <gtest/gtest.h>

#include "corpus.hpp"
#include "oracles.hpp"

using namespace ecx;

namespace
{

circuit balanced_or4()
{
  circuit_builder b( 4 );
  std::vector<gate_id> in;
  for ( uint32_t i = 0; i < 4; ++i )
  {
    in.push_back( b.add_input( i ) );
  }
  return std::move( b ).build( or_gadget_onehot( b, in ) );
}

uint64_t smallest_witness( circuit const& c, uint32_t e )
{
  for ( uint64_t k = 0;; ++k )
  {
    if ( energy( c, assignment_from_index( c.num_vars(), k ) ) == e )
    {
      return k;
    }
  }
}

} // namespace

TEST( simulate, small_examples )
{
  circuit const and2( 2, { gate::input( 0 ), gate::input( 1 ), gate::and_of( 0, 1 ) }, 2 );
  auto r = max_energy( and2 );
  EXPECT_EQ( r.max_energy, 1u );
  EXPECT_EQ( to_string( r.witness ), "11" );
  EXPECT_EQ( r.inputs_checked, 4u );
  EXPECT_EQ( r.mode, energy_mode::exhaustive );

  r = max_energy( balanced_or4() );
  EXPECT_EQ( r.max_energy, 3u );
  EXPECT_EQ( energy( balanced_or4(), assignment( 4, true ) ), 3u );
  /* x1 = x3 = 1 already lights all three gates and has the smaller index */
  EXPECT_EQ( to_string( r.witness ), "1010" );

  circuit const neg( 1, { gate::input( 0 ), gate::not_of( 0 ) }, 1 );
  r = max_energy( neg );
  EXPECT_EQ( r.max_energy, 1u );
  EXPECT_EQ( to_string( r.witness ), "0" );
}

TEST( simulate, truth_table_matches_scalar_evaluation )
{
  std::mt19937_64 rng( 31 );
  for ( int trial = 0; trial < 80; ++trial )
  {
    auto const c = test::random_circuit( { 1u + uint32_t( trial % 11 ), 1u + uint32_t( trial % 40 ), false, trial % 4 == 0 }, rng );
    auto const tt = to_truth_table( c );
    auto const naive = test::naive_table( c );
    for ( uint64_t k = 0; k < naive.size(); ++k )
    {
      ASSERT_EQ( tt[k], naive[k] );
    }
  }
}

TEST( simulate, exhaustive_energy_matches_scalar_with_smallest_witness )
{
  std::mt19937_64 rng( 32 );
  for ( int trial = 0; trial < 80; ++trial )
  {
    auto const c = test::random_circuit( { 1u + uint32_t( trial % 10 ), 1u + uint32_t( trial % 35 ), trial % 5 == 0, trial % 3 == 0 }, rng );
    auto const r = max_energy( c );
    ASSERT_EQ( r.max_energy, test::naive_ec( c ) );
    ASSERT_EQ( assignment_to_index( r.witness ), smallest_witness( c, r.max_energy ) );
    ASSERT_EQ( energy( c, r.witness ), r.max_energy );
  }
}

TEST( simulate, thread_count_does_not_change_result )
{
  std::mt19937_64 rng( 33 );
  for ( int trial = 0; trial < 3; ++trial )
  {
    auto const c = test::random_circuit( { 16u, 40u, false, false }, rng );
    auto const one = max_energy( c, exhaustive_search{ 25u, 1u } );
    auto const three = max_energy( c, exhaustive_search{ 25u, 3u } );
    EXPECT_EQ( one.max_energy, three.max_energy );
    EXPECT_EQ( one.witness, three.witness );
    EXPECT_EQ( energy( c, one.witness ), one.max_energy );
  }
}

TEST( simulate, cap_is_enforced )
{
  std::mt19937_64 rng( 1 );
  auto const c = test::random_circuit( { 5u, 5u }, rng );
  EXPECT_THROW( max_energy( c, exhaustive_search{ 4u } ), cap_exceeded );
  EXPECT_NO_THROW( max_energy( c, exhaustive_search{ 5u } ) );
  circuit const wide( 21, { gate::constant( false ) }, 0 );
  EXPECT_THROW( to_truth_table( wide ), cap_exceeded );
}

TEST( simulate, sampling_is_a_seeded_lower_estimate )
{
  std::mt19937_64 rng( 34 );
  for ( int trial = 0; trial < 20; ++trial )
  {
    auto const c = test::random_circuit( { 3u + uint32_t( trial % 8 ), 10u + uint32_t( trial ), false, false }, rng );
    auto const exact = max_energy( c ).max_energy;
    auto const a = max_energy( c, sampled_search{ 100u, 7u } );
    auto const b = max_energy( c, sampled_search{ 100u, 7u } );
    EXPECT_EQ( a.mode, energy_mode::sampled );
    EXPECT_EQ( a.inputs_checked, 100u );
    EXPECT_LE( a.max_energy, exact );
    EXPECT_EQ( a.max_energy, b.max_energy );
    EXPECT_EQ( a.witness, b.witness );
    EXPECT_EQ( energy( c, a.witness ), a.max_energy );
  }
}
