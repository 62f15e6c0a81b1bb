#include <gtest/gtest.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <sys/wait.h>

#include <ecx/ecx.hpp>

namespace
{

struct run_result
{
  int status;
  std::string out;
};

/* runs the tool through the shell; stderr is discarded unless redirected in `args` */
run_result run( std::string const& args, std::string const& stdin_text = {} )
{
  auto const dir = std::filesystem::temp_directory_path();
  std::string cmd;
  if ( !stdin_text.empty() )
  {
    auto const in = dir / "ecx_cli_stdin.txt";
    std::ofstream( in ) << stdin_text;
    cmd = std::string( ECX_BINARY ) + " " + args + " < " + in.string();
  }
  else
  {
    cmd = std::string( ECX_BINARY ) + " " + args + " < /dev/null";
  }
  if ( cmd.find( "2>" ) == std::string::npos )
  {
    cmd += " 2>/dev/null";
  }
  run_result r{ -1, {} };
  FILE* p = popen( cmd.c_str(), "r" );
  std::array<char, 4096> buf;
  while ( auto n = fread( buf.data(), 1, buf.size(), p ) )
  {
    r.out.append( buf.data(), n );
  }
  auto const raw = pclose( p );
  r.status = WIFEXITED( raw ) ? WEXITSTATUS( raw ) : -1;
  return r;
}

std::string write_temp( std::string const& name, std::string const& text )
{
  auto const path = std::filesystem::temp_directory_path() / name;
  std::ofstream( path ) << text;
  return path.string();
}

} // namespace

TEST( cli, measure_report )
{
  auto const r = run( "measure --tt 0111" );
  EXPECT_EQ( r.status, 0 );
  EXPECT_EQ( r.out, "n=2 d=2 s=2 psens=1 bs=2 c=2 deg=2 dependent=2 nondegenerate=1\n" );
  auto const path = write_temp( "ecx_tt.txt", "0111\n" );
  EXPECT_EQ( run( "measure --tt @" + path ).out, r.out );
}

TEST( cli, gen_or_piped_into_energy )
{
  auto const gen = run( "gen or --n 16" );
  ASSERT_EQ( gen.status, 0 );
  auto const e = run( "energy --exhaustive", gen.out );
  ASSERT_EQ( e.status, 0 );
  auto const c = ecx::read_netlist( gen.out );
  auto const expected = ecx::max_energy( c );
  EXPECT_EQ( e.out, "ec=" + std::to_string( expected.max_energy ) + " witness=" + ecx::to_string( expected.witness ) + " mode=exhaustive inputs=65536\n" );
  EXPECT_LE( expected.max_energy, 20u );
}

TEST( cli, energy_modes )
{
  auto const path = write_temp( "ecx_const.net", "inputs 4\ng0 = CONST 0\nout g0\n" );
  EXPECT_EQ( run( "energy --circuit " + path + " --input 0000" ).out, "energy=0 output=0\n" );
  auto const s1 = run( "energy --circuit " + path + " --sample 100 --seed 3" );
  EXPECT_EQ( s1.status, 0 );
  EXPECT_NE( s1.out.find( "mode=sampled inputs=100" ), std::string::npos );
  EXPECT_EQ( run( "energy --circuit " + path + " --input 000" ).status, 1 );
  EXPECT_EQ( run( "energy --circuit " + path + " --exhaustive --input 0000" ).status, 2 );
  EXPECT_EQ( run( "--cap 3 energy --circuit " + path ).status, 1 );
}

TEST( cli, gen_stats_are_comments_before_the_netlist )
{
  auto const r = run( "gen quadratic --tt 0110 --stats" );
  ASSERT_EQ( r.status, 0 );
  EXPECT_EQ( r.out.rfind( "# gates_total=", 0 ), 0u );
  EXPECT_NE( r.out.find( "# bound_claimed=5\n# bound_satisfied=1\ninputs 2\n" ), std::string::npos );
  EXPECT_EQ( ecx::to_truth_table( ecx::read_netlist( r.out ) ).to_string(), "0110" );
}

TEST( cli, every_generator_round_trips_through_export )
{
  for ( auto const* args : { "gen or --n 9", "gen addr --n 2", "gen eaddr --n 2 --g 0110", "gen linear --tt 00010111", "gen quadratic --tt 00010111" } )
  {
    auto const g = run( args );
    ASSERT_EQ( g.status, 0 ) << args;
    auto const e = run( "export --format netlist", g.out );
    ASSERT_EQ( e.status, 0 );
    EXPECT_EQ( ecx::read_netlist( e.out ), ecx::read_netlist( g.out ) ) << args;
    EXPECT_EQ( run( args ).out, g.out ) << "non-deterministic output for " << args;
  }
}

TEST( cli, compile_tree )
{
  auto const r = run( "compile --tree '(x1 (x2 0 1) 1)'" );
  ASSERT_EQ( r.status, 0 );
  EXPECT_EQ( ecx::to_truth_table( ecx::read_netlist( r.out ) ).to_string(), "0111" );
  EXPECT_EQ( run( "compile --tree '(x1 (x2 0 1)'" ).status, 1 );
}

TEST( cli, oracle_report )
{
  auto const r = run( "oracle --tt 0001 --max-gates 3 --witness" );
  ASSERT_EQ( r.status, 0 );
  EXPECT_EQ( r.out.rfind( "found=1 lower=1 upper=1 certified=1 states=", 0 ), 0u );
  EXPECT_NE( r.out.find( "AND" ), std::string::npos );
  EXPECT_EQ( run( "oracle --tt 0000000000000000 --max-gates 3" ).status, 1 );
}

TEST( cli, analyze_and_verify )
{
  auto const nand = write_temp( "ecx_nand.net", "inputs 2\ng0 = IN 0\ng1 = IN 1\ng2 = AND g0 g1\ng3 = NOT g2\nout g3\n" );
  auto const t = run( "analyze tree --circuit " + nand );
  ASSERT_EQ( t.status, 0 );
  EXPECT_EQ( t.out, "not_gates=g3\npartition={x1,x2} {}\ninduced_depth=2\noptimal_depth=2\nequivalent=1\ntree=(x1 1 (x2 1 0))\n" );

  auto const p = run( "analyze path --circuit " + nand + " --input 11 --flip 1" );
  ASSERT_EQ( p.status, 0 );
  EXPECT_EQ( p.out, "path=g0 g2 g3\nlength=2\nenergy_x=1\nenergy_flipped=1\nholds=1\n" );
  EXPECT_EQ( run( "analyze path --circuit " + nand + " --input 00 --flip 1" ).status, 1 );

  EXPECT_EQ( run( "analyze restrict --circuit " + nand ).out,
             "round=0 fixed={} not_gates=1 inner_gates=2 ec=1\nround=1 fixed={x1,x2} not_gates=0 inner_gates=0 ec=0\n" );

  EXPECT_EQ( run( "verify --circuit " + nand + " --suite lemma5" ).out, "check=lemma5 passed=1 not_gates=1 ec=1\n" );
  EXPECT_EQ( run( "verify --circuit " + nand + " --suite lemma4" ).status, 1 );
  EXPECT_EQ( run( "verify --circuit " + nand + " --suite bounds" ).status, 0 );
  EXPECT_EQ( run( "verify --circuit " + nand + " --suite nonsense" ).status, 2 );
}

TEST( cli, export_dot )
{
  auto const r = run( "export --format dot", "inputs 1\ng0 = IN 0\ng1 = NOT g0\nout g1\n" );
  ASSERT_EQ( r.status, 0 );
  EXPECT_EQ( r.out, "digraph circuit {\n  rankdir=BT;\n  g0 [label=\"x1\", shape=box];\n  g1 [label=\"NOT\", shape=circle, peripheries=2];\n  g0 -> g1;\n}\n" );
}

TEST( cli, exit_codes_and_diagnostics )
{
  EXPECT_EQ( run( "" ).status, 2 );
  EXPECT_EQ( run( "frobnicate" ).status, 2 );
  EXPECT_EQ( run( "measure" ).status, 2 );
  EXPECT_EQ( run( "measure --tt 0111 --bogus" ).status, 2 );
  EXPECT_EQ( run( "--help" ).status, 0 );
  EXPECT_EQ( run( "measure --tt 011" ).status, 1 );
  auto const diag = run( "export 2>&1 1>/dev/null", "inputs 1\ng0 = NOT g5\nout g0\n" );
  EXPECT_EQ( diag.status, 1 );
  EXPECT_EQ( diag.out, "error: line 2: gate 'g5' used before its definition\n" );
  EXPECT_EQ( run( "measure --tt @/nonexistent/file" ).status, 1 );
}
