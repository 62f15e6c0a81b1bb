/*!
  \file simulate.hpp
  \brief Bit-parallel simulation, truth tables of circuits and worst-case energy

  Simulation evaluates 64 input assignments per pass, one per bit lane.
  Per-lane energies are accumulated in a bit-sliced counter so that the
  maximum over a block is found without unpacking lanes.
*/

#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <thread>
#include <vector>

#include "circuit.hpp"
#include "truth_table.hpp"

namespace ecx
{

inline constexpr uint32_t default_exhaustive_cap = 25u;

/*! \brief Gate words for 64 assignments; `var_words[i]` holds variable i in every lane. */
inline std::vector<uint64_t> simulate_words( circuit const& c, std::span<uint64_t const> var_words )
{
  std::vector<uint64_t> w( c.num_gates() );
  for ( gate_id g = 0; g < c.num_gates(); ++g )
  {
    auto const& gt = c[g];
    switch ( gt.kind )
    {
    case gate_kind::input:
      w[g] = var_words[gt.a];
      break;
    case gate_kind::constant:
      w[g] = gt.a ? ~uint64_t( 0 ) : uint64_t( 0 );
      break;
    case gate_kind::and_:
      w[g] = w[gt.a] & w[gt.b];
      break;
    case gate_kind::or_:
      w[g] = w[gt.a] | w[gt.b];
      break;
    case gate_kind::not_:
      w[g] = ~w[gt.a];
      break;
    }
  }
  return w;
}

namespace detail
{

/* variable words for the block of 64 consecutive input indices starting at 64 * block */
inline void exhaustive_block_words( uint32_t num_vars, uint64_t block, std::vector<uint64_t>& words )
{
  words.resize( num_vars );
  for ( uint32_t i = 0; i < num_vars; ++i )
  {
    words[i] = i < 6u ? projections[i] : ( ( ( block >> ( i - 6u ) ) & 1u ) ? ~uint64_t( 0 ) : 0u );
  }
}

/* bit-sliced per-lane popcount over the inner gates */
class lane_counter
{
public:
  explicit lane_counter( std::size_t max_count ) : planes_( std::bit_width( max_count ) + 1u, 0u ) {}

  void reset() { std::fill( planes_.begin(), planes_.end(), 0u ); }

  void add( uint64_t w )
  {
    for ( auto& p : planes_ )
    {
      if ( w == 0u )
      {
        return;
      }
      auto const carry = p & w;
      p ^= w;
      w = carry;
    }
  }

  /* largest count among lanes in `valid`; `lanes` receives the lanes attaining it */
  uint32_t max_over( uint64_t valid, uint64_t& lanes ) const
  {
    uint32_t value = 0;
    lanes = valid;
    for ( auto j = planes_.size(); j-- > 0u; )
    {
      auto const t = lanes & planes_[j];
      if ( t != 0u )
      {
        lanes = t;
        value |= 1u << j;
      }
    }
    return value;
  }

  uint32_t lane( unsigned l ) const
  {
    uint32_t v = 0;
    for ( std::size_t j = 0; j < planes_.size(); ++j )
    {
      v |= uint32_t( ( planes_[j] >> l ) & 1u ) << j;
    }
    return v;
  }

private:
  std::vector<uint64_t> planes_;
};

struct block_best
{
  uint32_t energy = 0;
  uint64_t index = 0;
  bool found = false;

  void merge( block_best const& o )
  {
    if ( !o.found )
    {
      return;
    }
    if ( !found || o.energy > energy || ( o.energy == energy && o.index < index ) )
    {
      *this = o;
    }
  }
};

inline block_best scan_blocks( circuit const& c, std::vector<gate_id> const& inner, uint64_t first, uint64_t last )
{
  block_best best;
  lane_counter counter( inner.size() );
  std::vector<uint64_t> words;
  uint64_t const valid = word_mask( c.num_vars() );
  for ( uint64_t block = first; block < last; ++block )
  {
    exhaustive_block_words( c.num_vars(), block, words );
    auto const w = simulate_words( c, words );
    counter.reset();
    for ( auto g : inner )
    {
      counter.add( w[g] );
    }
    uint64_t lanes = 0;
    auto const e = counter.max_over( valid, lanes );
    best.merge( { e, ( block << 6 ) + std::countr_zero( lanes ), true } );
  }
  return best;
}

inline std::vector<gate_id> inner_gates( circuit const& c )
{
  std::vector<gate_id> r;
  for ( gate_id g = 0; g < c.num_gates(); ++g )
  {
    if ( c[g].is_inner() )
    {
      r.push_back( g );
    }
  }
  return r;
}

} // namespace detail

/*! \brief The function computed by `c` (at most 20 variables). */
inline truth_table to_truth_table( circuit const& c )
{
  if ( c.num_vars() > max_table_vars )
  {
    throw cap_exceeded( "truth table limited to " + std::to_string( max_table_vars ) + " variables" );
  }
  truth_table tt( c.num_vars() );
  std::vector<uint64_t> words;
  auto const blocks = c.num_vars() <= 6u ? 1u : ( uint64_t( 1 ) << ( c.num_vars() - 6u ) );
  auto const mask = detail::word_mask( c.num_vars() );
  for ( uint64_t block = 0; block < blocks; ++block )
  {
    detail::exhaustive_block_words( c.num_vars(), block, words );
    tt.words()[block] = simulate_words( c, words )[c.output()] & mask;
  }
  return tt;
}

enum class energy_mode
{
  exhaustive,
  sampled
};

struct energy_report
{
  uint32_t max_energy = 0;
  assignment witness;
  uint64_t inputs_checked = 0;
  energy_mode mode = energy_mode::exhaustive;
};

struct exhaustive_search
{
  uint32_t cap = default_exhaustive_cap;
  /* 0 selects the hardware concurrency */
  unsigned threads = 0;
};

struct sampled_search
{
  uint64_t count = 1u << 16;
  uint64_t seed = 1;
};

/*! \brief Exact worst-case energy; the witness is the smallest input index attaining it, independent of `threads`. */
inline energy_report max_energy( circuit const& c, exhaustive_search const& opts = {} )
{
  if ( c.num_vars() > opts.cap )
  {
    throw cap_exceeded( "exhaustive energy limited to " + std::to_string( opts.cap ) + " variables, circuit has " + std::to_string( c.num_vars() ) );
  }
  auto const inner = detail::inner_gates( c );
  uint64_t const blocks = c.num_vars() <= 6u ? 1u : ( uint64_t( 1 ) << ( c.num_vars() - 6u ) );

  unsigned threads = opts.threads != 0u ? opts.threads : std::max( 1u, std::thread::hardware_concurrency() );
  if ( blocks < 1024u )
  {
    threads = 1u;
  }
  threads = static_cast<unsigned>( std::min<uint64_t>( threads, blocks ) );

  detail::block_best best;
  if ( threads == 1u )
  {
    best = detail::scan_blocks( c, inner, 0u, blocks );
  }
  else
  {
    std::vector<detail::block_best> partial( threads );
    std::vector<std::jthread> pool;
    for ( unsigned t = 0; t < threads; ++t )
    {
      uint64_t const first = blocks * t / threads;
      uint64_t const last = blocks * ( t + 1u ) / threads;
      pool.emplace_back( [&, t, first, last] { partial[t] = detail::scan_blocks( c, inner, first, last ); } );
    }
    pool.clear();
    for ( auto const& p : partial )
    {
      best.merge( p );
    }
  }
  return { best.energy, assignment_from_index( c.num_vars(), best.index ), uint64_t( 1 ) << c.num_vars(), energy_mode::exhaustive };
}

/*! \brief Lower estimate of the worst-case energy over `count` uniformly random inputs. */
inline energy_report max_energy( circuit const& c, sampled_search const& opts )
{
  auto const inner = detail::inner_gates( c );
  std::mt19937_64 rng( opts.seed );
  detail::lane_counter counter( inner.size() );
  std::vector<uint64_t> words( c.num_vars() );

  energy_report report;
  report.mode = energy_mode::sampled;
  report.witness.assign( c.num_vars(), false );
  bool have = false;
  for ( uint64_t done = 0; done < opts.count; done += 64u )
  {
    for ( auto& w : words )
    {
      w = rng();
    }
    auto const lanes_here = std::min<uint64_t>( 64u, opts.count - done );
    uint64_t const valid = lanes_here == 64u ? ~uint64_t( 0 ) : ( ( uint64_t( 1 ) << lanes_here ) - 1u );
    auto const w = simulate_words( c, words );
    counter.reset();
    for ( auto g : inner )
    {
      counter.add( w[g] );
    }
    uint64_t lanes = 0;
    auto const e = counter.max_over( valid, lanes );
    if ( !have || e > report.max_energy )
    {
      have = true;
      report.max_energy = e;
      auto const lane = std::countr_zero( lanes );
      for ( uint32_t i = 0; i < c.num_vars(); ++i )
      {
        report.witness[i] = ( words[i] >> lane ) & 1u;
      }
    }
  }
  report.inputs_checked = opts.count;
  return report;
}

} // namespace ecx
