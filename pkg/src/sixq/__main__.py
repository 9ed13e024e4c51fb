from sixq.cli import main

main()
