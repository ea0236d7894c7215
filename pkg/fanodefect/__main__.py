from fanodefect.cli import console_main

console_main()
