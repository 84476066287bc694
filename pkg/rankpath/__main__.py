from rankpath.cli import main

main(prog_name="rankpath")
